"""Confusion-matrix metrics and the k-fold cross-validation harness."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .data import Dataset, make_folds
from .errors import FoldRppError
from .heuristics import ConfusionCounts
from .interpreter import Record, classify
from .learner import Hyperparams, fit


@dataclass(frozen=True)
class Metrics:
    """rule_count is the emitted clause count (target rules plus abnormal
    clauses); it and train_time_ms are floats so fold means stay exact."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    train_time_ms: float = 0.0
    rule_count: float = 0.0
    undefined: tuple[str, ...] = ()


def confusion(predictions: Sequence[bool], labels: Sequence[bool]) -> ConfusionCounts:
    if len(predictions) != len(labels):
        raise ValueError(f"{len(predictions)} predictions for {len(labels)} labels")
    tp = fn = tn = fp = 0
    for pred, label in zip(predictions, labels):
        if label:
            if pred:
                tp += 1
            else:
                fn += 1
        else:
            if pred:
                fp += 1
            else:
                tn += 1
    return ConfusionCounts(tp, fn, tn, fp)


def metrics(c: ConfusionCounts) -> Metrics:
    """Standard ratios; a zero denominator reports 0.0 and flags the metric
    name in `undefined` instead of raising."""
    tp, fn, tn, fp = c
    total = tp + fn + tn + fp
    undefined = []

    def ratio(num, den, name):
        if den == 0:
            undefined.append(name)
            return 0.0
        return num / den

    accuracy = ratio(tp + tn, total, "accuracy")
    precision = ratio(tp, tp + fp, "precision")
    recall = ratio(tp, tp + fn, "recall")
    f1 = ratio(2 * precision * recall, precision + recall, "f1")
    return Metrics(accuracy, precision, recall, f1, undefined=tuple(undefined))


def mean_metrics(folds: Sequence[Metrics]) -> Metrics:
    """Arithmetic mean per metric across folds (macro average, not pooled)."""
    n = len(folds)
    if n == 0:
        raise ValueError("no folds to average")
    flagged = sorted({name for m in folds for name in m.undefined})
    return Metrics(
        accuracy=sum(m.accuracy for m in folds) / n,
        precision=sum(m.precision for m in folds) / n,
        recall=sum(m.recall for m in folds) / n,
        f1=sum(m.f1 for m in folds) / n,
        train_time_ms=sum(m.train_time_ms for m in folds) / n,
        rule_count=sum(m.rule_count for m in folds) / n,
        undefined=tuple(flagged),
    )


def evaluate_fold(train: Dataset, test: Dataset, hp: Optional[Hyperparams]) -> Metrics:
    train_ids = {e.id for e in train.examples}
    if any(e.id in train_ids for e in test.examples):
        raise FoldRppError("internal error: train and test folds overlap")
    t0 = time.perf_counter()
    program = fit(train, hp)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    predictions = [classify(program, Record(e.values, e.id)) for e in test.examples]
    labels = [e.label for e in test.examples]
    m = metrics(confusion(predictions, labels))
    return replace(m, train_time_ms=elapsed_ms, rule_count=float(program.clause_count()))


def cross_validate(
    d: Dataset, k: int, hp: Optional[Hyperparams] = None, seed: int = 0
) -> tuple[list[Metrics], Metrics]:
    """Fit on each train fold, score its test fold; timing covers fit only.

    Returns (per-fold metrics, macro mean).  Deterministic for a fixed
    (dataset, k, hp, seed).
    """
    folds = [evaluate_fold(train, test, hp) for train, test in make_folds(d, k, seed)]
    return folds, mean_metrics(folds)
