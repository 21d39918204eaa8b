"""Exception hierarchy shared across the toolkit."""


class QraError(Exception):
    """Base class for all toolkit errors."""


class InvalidSampleSize(QraError):
    """Raised when an operation needs at least two values and got fewer."""


class ValueBelowScale(QraError):
    """Raised when a measured value lies below its measurand's scale minimum."""


class DegenerateMean(QraError):
    """Raised when the shifted mean is zero and CV is undefined."""


class InvalidProbability(QraError):
    pass


class InvalidDf(QraError):
    pass


class InvalidParameters(QraError):
    """Bad simulation parameters (n, sigma, trials)."""


class UnknownObject(QraError):
    pass


class UnknownMeasurand(QraError):
    pass


class EmptyGroup(QraError):
    """No measurements match the requested (object, measurand) pair."""


class MixedGroup(QraError):
    """A measurement group spans more than one object or measurand."""


class ParseError(QraError):
    """Input file could not be parsed."""


class SchemaError(QraError):
    """Input file is missing a required column or field."""


class ValidationError(QraError):
    """Dataset validation produced blocking issues."""

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__(
            "; ".join(f"{i.location}: {i.message}" for i in self.issues)
        )
