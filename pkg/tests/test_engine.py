import random

import pytest

from qrakit.engine import (
    ALL_SAME,
    DIFFERS,
    HAS_UNKNOWN,
    INDETERMINATE,
    REPEATABILITY,
    REPRODUCIBILITY,
    classify,
    condition_diff,
    run_qra_test,
    subgroup_assess,
)
from qrakit.errors import EmptyGroup, InvalidSampleSize, MixedGroup
from qrakit.io import bundled_paper_dataset
from qrakit.model import (
    Measurand,
    ObjectRef,
    QraDataset,
    default_condition_schema,
    make_measurement,
)


@pytest.fixture(scope="module")
def ds():
    return bundled_paper_dataset()


def tiny_dataset(condition_rows, values=None):
    """A one-pair dataset with the given per-measurement condition labels."""
    schema = default_condition_schema()
    values = values or [float(i + 1) for i in range(len(condition_rows))]
    measurements = tuple(
        make_measurement("sys", "score", v, conditions=row, schema=schema)
        for v, row in zip(values, condition_rows)
    )
    return QraDataset(
        schema=schema,
        objects=(ObjectRef("sys", "sys"),),
        measurands=(Measurand("score", "score", "score"),),
        measurements=measurements,
    )


def all_same_row(label="team"):
    return {name: label for name in default_condition_schema().names}


class TestConditionDiff:
    def test_pass_group_verdicts(self, ds):
        report = run_qra_test(ds, "PASS", "Clarity")
        verdicts = report.diff.verdicts
        assert verdicts["test_set"] == ALL_SAME
        assert verdicts["system_code"] == ALL_SAME
        assert verdicts["implementation"] == DIFFERS
        assert verdicts["procedure"] == DIFFERS
        assert verdicts["performed_by"] == DIFFERS

    def test_identical_rows_all_same(self):
        dataset = tiny_dataset([all_same_row(), all_same_row()])
        diff = condition_diff(list(dataset.measurements), dataset.schema)
        assert set(diff.verdicts.values()) == {ALL_SAME}
        assert classify(diff) == REPEATABILITY

    def test_unknown_forces_indeterminate(self):
        row_a = all_same_row()
        row_b = all_same_row()
        row_b["performed_by"] = None
        dataset = tiny_dataset([row_a, row_b])
        diff = condition_diff(list(dataset.measurements), dataset.schema)
        assert diff.verdicts["performed_by"] == HAS_UNKNOWN
        assert classify(diff) == INDETERMINATE

    def test_mixed_group_rejected(self, ds):
        mixed = [m for m in ds.measurements
                 if m.object in ("PASS", "NTS_def")][:4]
        with pytest.raises(MixedGroup):
            condition_diff(mixed, ds.schema)

    def test_empty_group_rejected(self, ds):
        with pytest.raises(EmptyGroup):
            condition_diff([], ds.schema)


class TestRunQraTest:
    def test_ntsw2v_sari(self, ds):
        report = run_qra_test(ds, "NTS-w2v_def", "SARI")
        assert report.precision.cv_star == pytest.approx(3.572, abs=1e-3)
        assert report.classification == REPRODUCIBILITY

    def test_pass_fluency(self, ds):
        report = run_qra_test(ds, "PASS", "Fluency")
        assert report.precision.cv_star == pytest.approx(16.372, abs=1e-2)
        assert report.diff.verdicts["test_set"] == ALL_SAME
        assert report.diff.verdicts["performed_by"] == DIFFERS

    def test_mult_pos_minus(self, ds):
        report = run_qra_test(ds, "mult-POS-", "wF1")
        assert report.precision.cv_star == pytest.approx(3.818, abs=1e-3)

    def test_single_measurement_rejected(self):
        dataset = tiny_dataset([all_same_row()])
        with pytest.raises(InvalidSampleSize):
            run_qra_test(dataset, "sys", "score")


class TestSubgroupAssess:
    def test_same_outputs_bleu(self, ds):
        report = subgroup_assess(
            ds, "NTS_def", "BLEU",
            [("compile_training_info", "Nisioi et al.")])
        assert report.precision.n == 4
        assert sorted(m.value for m in report.measurements) == \
            [84.20, 84.50, 84.51, 85.60]
        assert report.precision.cv_star == pytest.approx(0.838, abs=1e-3)
        assert len(report.excluded) == 3

    def test_same_outputs_bleu_w2v(self, ds):
        report = subgroup_assess(
            ds, "NTS-w2v_def", "BLEU",
            [("compile_training_info", "Nisioi et al.")])
        assert report.precision.n == 3
        assert report.precision.cv_star == pytest.approx(1.314, abs=1e-3)

    def test_regenerated_outputs_sari(self, ds):
        regen = lambda m: m.condition("compile_training_info").matches(
            m.condition("performed_by"))
        report = subgroup_assess(ds, "NTS_def", "SARI", where=regen)
        assert [m.value for m in report.measurements] == [30.65, 29.13, 29.96]
        assert report.precision.cv_star == pytest.approx(3.11, abs=1e-2)

    def test_empty_predicate_equals_full_test(self, ds):
        for obj, meas in ds.pairs():
            full = run_qra_test(ds, obj, meas)
            sub = subgroup_assess(ds, obj, meas, [])
            assert sub.precision == full.precision
            assert sub.measurements == full.measurements
            assert sub.classification == full.classification
            assert sub.excluded == ()

    def test_unknown_never_satisfies_predicate(self):
        row_a = all_same_row()
        row_b = all_same_row()
        row_b["test_set"] = None
        dataset = tiny_dataset([row_a, row_b])
        with pytest.raises(InvalidSampleSize):
            subgroup_assess(dataset, "sys", "score", [("test_set", "team")])

    def test_filter_to_nothing(self, ds):
        with pytest.raises(EmptyGroup):
            subgroup_assess(ds, "NTS_def", "BLEU",
                            [("performed_by", "nobody")])


class TestInvariants:
    def test_permutation_invariance(self, ds):
        base = run_qra_test(ds, "NTS_def", "BLEU")
        members = list(ds.measurements)
        rng = random.Random(7)
        for _ in range(5):
            rng.shuffle(members)
            shuffled = QraDataset(
                schema=ds.schema, objects=ds.objects,
                measurands=ds.measurands, measurements=tuple(members))
            report = run_qra_test(shuffled, "NTS_def", "BLEU")
            assert report.precision == base.precision
            assert report.classification == base.classification
            assert report.diff.verdicts == base.diff.verdicts

    def test_adding_duplicate_row_keeps_reproducibility(self):
        row_a = all_same_row("a")
        row_b = all_same_row("b")
        base = tiny_dataset([row_a, row_b], values=[1.0, 2.0])
        assert run_qra_test(base, "sys", "score").classification == \
            REPRODUCIBILITY
        extended = tiny_dataset([row_a, row_b, row_b], values=[1.0, 2.0, 2.5])
        assert run_qra_test(extended, "sys", "score").classification == \
            REPRODUCIBILITY
