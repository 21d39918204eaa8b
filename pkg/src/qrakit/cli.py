"""Command-line interface: validate, assess, subgroup and simulate.

Exit codes: 0 success, 1 dataset/validation errors, 2 usage errors,
3 computation errors (e.g. a degenerate mean or too few measurements).
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .engine import run_qra_test, subgroup_assess
from .errors import (
    DegenerateMean,
    EmptyGroup,
    InvalidParameters,
    InvalidSampleSize,
    ParseError,
    QraError,
    SchemaError,
    UnknownMeasurand,
    UnknownObject,
    ValidationError,
)
from .io import bundled_paper_dataset, load_dataset, validate_dataset
from .render import RenderSpec, render_condition_matrix, render_precision_table
from .sim import simulate

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_COMPUTE = 3

_DATA_ERRORS = (ParseError, SchemaError, ValidationError,
                UnknownObject, UnknownMeasurand, EmptyGroup)
_COMPUTE_ERRORS = (DegenerateMean, InvalidSampleSize)


def _styled(text: str) -> str:
    if os.environ.get("QRA_NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[1m{text}\x1b[0m"


def _load(args):
    if args.input == "builtin":
        return bundled_paper_dataset()
    return load_dataset(args.input, fmt=args.format)


def _emit(args, document: str) -> None:
    if args.out:
        Path(args.out).write_text(document, encoding="utf-8")
    else:
        sys.stdout.write(document)


def _render_spec(args) -> RenderSpec:
    return RenderSpec(format=args.render)


def _selected_pairs(dataset, args):
    pairs = dataset.pairs()
    if args.object:
        dataset.object_by_id(args.object)
        pairs = [p for p in pairs if p[0] == args.object]
    if args.measurand:
        dataset.measurand_by_id(args.measurand)
        pairs = [p for p in pairs if p[1] == args.measurand]
    if not pairs:
        raise EmptyGroup("no (object, measurand) pair matches the given filters")
    return pairs


def _report_document(reports, args) -> str:
    spec = _render_spec(args)
    parts = [render_precision_table(reports, spec)]
    if args.conditions:
        parts += [render_condition_matrix(r, spec) for r in reports]
    return "\n".join(parts)


def cmd_validate(args) -> int:
    if args.input == "builtin":
        dataset = bundled_paper_dataset()
        issues = validate_dataset(dataset)
    else:
        # load_dataset raises on blocking errors; report them as issues
        try:
            dataset = load_dataset(args.input, fmt=args.format)
        except ValidationError as exc:
            for issue in exc.issues:
                print(f"error: {issue.location}: {issue.message}")
            return EXIT_DATA
        issues = validate_dataset(dataset)
    for issue in issues:
        print(f"{issue.severity}: {issue.location}: {issue.message}")
    errors = [i for i in issues if i.severity == "error"]
    if errors:
        return EXIT_DATA
    print(f"ok: {len(dataset.measurements)} measurements, "
          f"{len(dataset.pairs())} (object, measurand) pairs")
    return EXIT_OK


def cmd_assess(args) -> int:
    dataset = _load(args)
    counts = {}
    for m in dataset.measurements:
        counts[(m.object, m.measurand)] = counts.get((m.object, m.measurand), 0) + 1
    pairs = [p for p in _selected_pairs(dataset, args) if counts[p] >= 2]
    if not pairs:
        raise InvalidSampleSize("every matching pair has fewer than 2 measurements")
    reports = [run_qra_test(dataset, obj, meas) for obj, meas in pairs]
    _emit(args, _report_document(reports, args))
    return EXIT_OK


def _parse_where(entries):
    predicate = []
    for entry in entries:
        name, sep, label = entry.partition("=")
        if not sep or not name.startswith("cond.") or not label:
            raise argparse.ArgumentTypeError(
                f"--where must look like cond.<name>=<label>, got {entry!r}"
            )
        predicate.append((name[len("cond."):], label.strip("\"'")))
    return predicate


def cmd_subgroup(args) -> int:
    dataset = _load(args)
    predicate = _parse_where(args.where or [])
    report = subgroup_assess(dataset, args.object, args.measurand, predicate)
    _emit(args, _report_document([report], args))
    return EXIT_OK


def cmd_simulate(args) -> int:
    result = simulate(args.n, args.sigma, args.trials, args.seed)
    lines = [
        _styled(f"estimator diagnostics (seed {result.seed})"),
        f"n          {result.n}",
        f"sigma      {result.sigma:g}",
        f"trials     {result.trials}",
        f"mean(s)    {result.mean_s:.6f}",
        f"mean(s*)   {result.mean_s_star:.6f}",
        f"95% CI coverage of sigma: {result.ci_coverage:.4f}",
    ]
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _add_dataset_args(parser):
    parser.add_argument("--input", required=True,
                        help="dataset file, or 'builtin' for the bundled benchmark")
    parser.add_argument("--format", choices=("csv", "json", "auto"), default="auto",
                        help="input file format (default: by extension)")


def _add_output_args(parser):
    parser.add_argument("--render", choices=("text", "markdown", "csv", "json"),
                        default="text", help="output document format")
    parser.add_argument("--out", help="write output to this file instead of stdout")
    parser.add_argument("--conditions", action="store_true",
                        help="also print the condition matrix for each result")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qra",
        description="Assess the reproducibility of evaluation scores: "
                    "de-biased precision (CV*) with confidence statistics, "
                    "attributed to conditions of measurement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a dataset and report issues")
    _add_dataset_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("assess", help="run assessments for matching pairs")
    _add_dataset_args(p)
    p.add_argument("--object", help="restrict to one object id")
    p.add_argument("--measurand", help="restrict to one measurand id")
    _add_output_args(p)
    p.set_defaults(func=cmd_assess)

    p = sub.add_parser("subgroup", help="assess a condition-filtered subset")
    _add_dataset_args(p)
    p.add_argument("--object", required=True)
    p.add_argument("--measurand", required=True)
    p.add_argument("--where", action="append", metavar="cond.<name>=<label>",
                   help="keep only measurements whose condition has this "
                        "label (repeatable; conjunctive)")
    _add_output_args(p)
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("simulate", help="Monte Carlo estimator diagnostics")
    p.add_argument("--n", type=int, required=True, help="sample size per trial")
    p.add_argument("--sigma", type=float, required=True, help="true stdev")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidParameters as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _COMPUTE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except QraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
