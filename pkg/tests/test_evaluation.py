import random

import pytest

from foldrpp import (
    ConfusionCounts,
    Dataset,
    Example,
    Hyperparams,
    Schema,
    Value,
    confusion,
    cross_validate,
    load_csv,
    mean_metrics,
    metrics,
)


class TestConfusion:
    def test_all_correct(self):
        preds = [True, True, True, False, False]
        labels = [True, True, True, False, False]
        assert confusion(preds, labels) == ConfusionCounts(3, 0, 2, 0)

    def test_all_predicted_positive(self):
        preds = [True] * 5
        labels = [True, True, True, False, False]
        assert confusion(preds, labels) == ConfusionCounts(3, 0, 0, 2)

    def test_random_recount(self):
        rng = random.Random(3)
        preds = [rng.random() < 0.5 for _ in range(500)]
        labels = [rng.random() < 0.5 for _ in range(500)]
        c = confusion(preds, labels)
        assert c.tp == sum(p and l for p, l in zip(preds, labels))
        assert c.fn == sum(not p and l for p, l in zip(preds, labels))
        assert c.tn == sum(not p and not l for p, l in zip(preds, labels))
        assert c.fp == sum(p and not l for p, l in zip(preds, labels))
        assert sum(c) == 500

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            confusion([True], [True, False])


class TestMetrics:
    def test_perfect(self):
        m = metrics(ConfusionCounts(3, 0, 2, 0))
        assert (m.accuracy, m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0, 1.0)
        assert m.undefined == ()

    def test_all_zero_flagged(self):
        m = metrics(ConfusionCounts(0, 0, 0, 0))
        assert m.accuracy == 0.0
        assert set(m.undefined) == {"accuracy", "precision", "recall", "f1"}

    def test_reported_model_quality(self):
        # the worked passenger model reports 0.94/0.97/0.93/0.95; a count
        # vector realizing those ratios must reproduce them
        c = ConfusionCounts(tp=243, fn=18, tn=150, fp=7)
        m = metrics(c)
        assert m.accuracy == pytest.approx(0.94, abs=5e-3)
        assert m.precision == pytest.approx(0.97, abs=5e-3)
        assert m.recall == pytest.approx(0.93, abs=5e-3)
        assert m.f1 == pytest.approx(0.95, abs=5e-3)

    def test_f1_identity(self):
        m = metrics(ConfusionCounts(10, 5, 20, 3))
        assert m.f1 == pytest.approx(
            2 * m.precision * m.recall / (m.precision + m.recall)
        )


class TestCrossValidate:
    def _separable(self, n=16):
        schema = Schema(("color", "noise"), "y", "yes")
        examples = tuple(
            Example(
                i,
                (Value.categorical("red" if i % 2 else "blue"), Value.numeric(i % 7)),
                i % 2 == 1,
            )
            for i in range(n)
        )
        return Dataset(schema, examples)

    def test_separable_two_folds_perfect(self):
        folds, mean = cross_validate(self._separable(), k=2, seed=0)
        assert all(m.accuracy == 1.0 for m in folds)
        assert mean.accuracy == 1.0

    def test_leave_one_out_runs(self):
        d = self._separable(6)
        folds, _ = cross_validate(d, k=6, seed=0)
        assert len(folds) == 6

    def test_deterministic_reports(self, survival_csv):
        d = load_csv(survival_csv, "status", "0")
        a_folds, a_mean = cross_validate(d, 5, Hyperparams(), seed=3)
        b_folds, b_mean = cross_validate(d, 5, Hyperparams(), seed=3)
        strip = lambda m: (m.accuracy, m.precision, m.recall, m.f1, m.rule_count)
        assert [strip(m) for m in a_folds] == [strip(m) for m in b_folds]
        assert strip(a_mean) == strip(b_mean)

    def test_mean_is_macro_average(self, survival_csv):
        d = load_csv(survival_csv, "status", "0")
        folds, mean = cross_validate(d, 4, seed=1)
        assert mean.accuracy == pytest.approx(sum(m.accuracy for m in folds) / 4)
        assert mean.f1 == pytest.approx(sum(m.f1 for m in folds) / 4)
        assert mean.rule_count == pytest.approx(sum(m.rule_count for m in folds) / 4)

    def test_survival_fixture_generalizes(self, survival_csv):
        # noise-free planted rules: cross-validated accuracy stays high
        d = load_csv(survival_csv, "status", "0")
        _, mean = cross_validate(d, 5, seed=0)
        assert mean.accuracy >= 0.85

    def test_timing_recorded(self, survival_csv):
        d = load_csv(survival_csv, "status", "0")
        folds, mean = cross_validate(d, 3, seed=0)
        assert all(m.train_time_ms > 0 for m in folds)
        assert mean.train_time_ms > 0

    def test_mean_metrics_requires_folds(self):
        with pytest.raises(ValueError):
            mean_metrics([])

    def test_fold_separation_enforced(self):
        from foldrpp import FoldRppError
        from foldrpp.evaluation import evaluate_fold

        d = self._separable(8)
        with pytest.raises(FoldRppError):
            evaluate_fold(d, d, None)  # same rows on both sides
