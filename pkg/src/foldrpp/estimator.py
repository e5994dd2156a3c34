"""Scikit-learn style front end, so the learner composes with the wider
ecosystem (cross_val_score, pipelines, cloning via get_params/set_params).

X may be a list of rows, an object ndarray, or a DataFrame and may freely mix
numbers, strings, None/NaN, and booleans per cell; nothing is one-hot encoded
or discretized.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.exceptions import NotFittedError

from .asp import emit_asp, explain_rules_english
from .data import MISSING, Dataset, Example, Schema, Value, infer_value
from .errors import DataError
from .interpreter import Prediction, Record, classify, justify
from .learner import Hyperparams, fit as fit_program


def check_feature_matrix(X, n_features: Optional[int] = None):
    """Coerce X to a 2-D object array; returns (array, column names or None)."""
    columns = getattr(X, "columns", None)
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2:
        raise DataError(f"X must be 2-dimensional, got shape {arr.shape}")
    if n_features is not None and arr.shape[1] != n_features:
        raise DataError(f"X has {arr.shape[1]} features, expected {n_features}")
    names = [str(c) for c in columns] if columns is not None else None
    return arr, names


def cell_to_value(cell) -> Value:
    """Map one matrix cell onto the learner's value domain.

    Booleans become the tokens true/false so they can appear as propositional
    atoms in rules; NaN and None are missing; strings go through the same
    inference as CSV cells.
    """
    if cell is None:
        return MISSING
    if isinstance(cell, Value):
        return cell
    if isinstance(cell, (bool, np.bool_)):
        return Value.categorical(str(bool(cell)).lower())
    if isinstance(cell, (int, float, np.integer, np.floating)):
        x = float(cell)
        if math.isnan(x):
            return MISSING
        if not math.isfinite(x):
            raise DataError(f"non-finite feature value {cell!r}")
        return Value.numeric(x)
    return infer_value(str(cell))


class FoldRppClassifier(ClassifierMixin, BaseEstimator):
    """Binary rule-set classifier with an answer-set-program model.

    Parameters
    ----------
    ratio : float, default 0.5
        Exception tolerance: rule growth stops once the remaining negatives
        drop to ratio * positives, and the residue is learned as exceptions.
    positive_class : optional
        The y value to learn rules for.  Defaults to the largest class value
        in sorted order (so 1 for 0/1 targets, "yes" for no/yes).
    target_name : str, default "target"
        Predicate name used for rule heads in the emitted program.
    feature_names : optional sequence of str
        Overrides DataFrame column names / generated f0..fN names.
    """

    def __init__(
        self,
        ratio: float = 0.5,
        positive_class=None,
        target_name: str = "target",
        feature_names: Optional[Sequence[str]] = None,
    ):
        self.ratio = ratio
        self.positive_class = positive_class
        self.target_name = target_name
        self.feature_names = feature_names

    def _check_fitted(self):
        if not hasattr(self, "program_"):
            raise NotFittedError("this FoldRppClassifier instance is not fitted yet")

    def fit(self, X, y):
        X_arr, df_names = check_feature_matrix(X)
        y_arr = np.asarray(y).ravel()
        if len(y_arr) != X_arr.shape[0]:
            raise DataError(f"{X_arr.shape[0]} rows but {len(y_arr)} labels")
        if X_arr.shape[0] == 0:
            raise DataError("cannot fit on an empty dataset")

        self.classes_ = np.unique(y_arr)
        if len(self.classes_) > 2:
            raise DataError(f"binary targets only, got {len(self.classes_)} classes")
        if self.positive_class is not None:
            matches = [c for c in self.classes_ if c == self.positive_class]
            if not matches:
                raise DataError(f"positive_class {self.positive_class!r} not present in y")
            positive = matches[0]
        else:
            positive = self.classes_[-1]
        self.positive_class_ = positive

        if self.feature_names is not None:
            names = tuple(str(n) for n in self.feature_names)
        elif df_names is not None:
            names = tuple(df_names)
        else:
            names = tuple(f"f{j}" for j in range(X_arr.shape[1]))
        if len(names) != X_arr.shape[1]:
            raise DataError(f"{len(names)} feature names for {X_arr.shape[1]} columns")

        schema = Schema(names, self.target_name, str(positive))
        examples = tuple(
            Example(i, tuple(cell_to_value(c) for c in row), bool(yv == positive))
            for i, (row, yv) in enumerate(zip(X_arr, y_arr))
        )
        self.program_ = fit_program(Dataset(schema, examples), Hyperparams(self.ratio))
        self.n_features_in_ = X_arr.shape[1]
        self.feature_names_in_ = np.asarray(names, dtype=object)
        return self

    def _records(self, X) -> list[Record]:
        X_arr, _ = check_feature_matrix(X, self.n_features_in_)
        return [
            Record(tuple(cell_to_value(c) for c in row), rid=i)
            for i, row in enumerate(X_arr)
        ]

    def predict(self, X):
        """Predicted class values, in the dtype of the training labels.

        When training saw a single class, rows rejected by the rules get the
        string "not_<positive>" since no other class value is known.
        """
        self._check_fitted()
        positive = self.positive_class_
        others = [c for c in self.classes_ if c != positive]
        labels = [classify(self.program_, r) for r in self._records(X)]
        if others:
            return np.asarray([positive if flag else others[0] for flag in labels])
        # single-class training: keep mixed values intact under object dtype
        return np.asarray(
            [positive if flag else f"not_{positive}" for flag in labels], dtype=object
        )

    def decision_function(self, X):
        """1.0 where some rule fires, else 0.0 (rule sets are crisp)."""
        self._check_fitted()
        return np.asarray(
            [1.0 if classify(self.program_, r) else 0.0 for r in self._records(X)]
        )

    def justify(self, X, templates: Optional[dict] = None) -> list[Prediction]:
        """Per-row justification trees (see foldrpp.interpreter)."""
        self._check_fitted()
        return [justify(self.program_, r, templates) for r in self._records(X)]

    def to_asp(self) -> str:
        """The learned model as answer-set-program text."""
        self._check_fitted()
        return emit_asp(self.program_)

    def rules_english(self, templates: Optional[dict] = None) -> str:
        self._check_fitted()
        return explain_rules_english(self.program_, templates)
