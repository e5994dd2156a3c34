"""Mixed-type tabular data: per-cell value inference, CSV loading, CV folds.

Cells are typed individually, not per column, so one feature may hold both
numbers and tokens.  No encoding step exists: the learner consumes these
values as-is.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import DataError, MissingColumnError, RaggedRowError

MISSING_TOKEN = "?"


class ValueKind(Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"
    MISSING = "missing"


@dataclass(frozen=True, slots=True)
class Value:
    """One table cell: a finite number, a categorical token, or a missing mark."""

    kind: ValueKind
    num: float = 0.0
    sym: str = ""

    @staticmethod
    def numeric(x: float) -> "Value":
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"numeric cell must be finite, got {x!r}")
        return Value(ValueKind.NUMERIC, num=x)

    @staticmethod
    def categorical(token: str) -> "Value":
        return Value(ValueKind.CATEGORICAL, sym=token)

    @property
    def token(self) -> str:
        """Categorical token; missing cells share the reserved token "?"."""
        if self.kind is ValueKind.NUMERIC:
            raise ValueError("numeric value has no token")
        return self.sym if self.kind is ValueKind.CATEGORICAL else MISSING_TOKEN

    def render(self) -> str:
        if self.kind is ValueKind.NUMERIC:
            return repr(self.num)
        return self.token


MISSING = Value(ValueKind.MISSING)


def infer_value(token: str) -> Value:
    """Classify one raw CSV cell.  Total: never raises.

    Numbers use the dot decimal separator regardless of locale; empty cells
    and "?" are missing; everything else (including non-finite spellings like
    "inf") is a categorical token.
    """
    token = token.strip()
    if token == "" or token == MISSING_TOKEN:
        return MISSING
    if "_" not in token:  # float() tolerates 1_000, which is not CSV practice
        try:
            x = float(token)
        except ValueError:
            pass
        else:
            if math.isfinite(x):
                return Value(ValueKind.NUMERIC, num=x)
    return Value(ValueKind.CATEGORICAL, sym=token)


@dataclass(frozen=True, slots=True)
class Schema:
    feature_names: tuple[str, ...]
    target_name: str
    positive_value: str

    def __post_init__(self):
        names = self.feature_names
        if any(not n for n in names) or len(set(names)) != len(names):
            raise DataError("feature names must be unique and non-empty")
        if self.target_name in names:
            raise DataError(f"target column {self.target_name!r} listed among features")


@dataclass(frozen=True, slots=True)
class Example:
    id: int
    values: tuple[Value, ...]
    label: bool


@dataclass(frozen=True, slots=True)
class Dataset:
    """Immutable after construction; safe to share across threads."""

    schema: Schema
    examples: tuple[Example, ...]

    def __post_init__(self):
        width = len(self.schema.feature_names)
        for e in self.examples:
            if len(e.values) != width:
                raise DataError(f"example {e.id} has {len(e.values)} values, expected {width}")

    def __len__(self) -> int:
        return len(self.examples)

    def __iter__(self):
        return iter(self.examples)


def load_csv(path, target_name: str, positive_value: str) -> Dataset:
    """Load an RFC-4180-style CSV with a header row into a Dataset.

    Every non-target column becomes a feature; a row is positive when its
    target cell equals ``positive_value``.  Row order is preserved and the
    example id is the 0-based data-row index.
    """
    with open(path, newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row") from None
        if target_name not in header:
            raise MissingColumnError(f"{path}: no column named {target_name!r} in header")
        t = header.index(target_name)
        schema = Schema(
            tuple(h for j, h in enumerate(header) if j != t), target_name, positive_value
        )
        examples = []
        for i, row in enumerate(reader):
            if len(row) != len(header):
                raise RaggedRowError(
                    f"{path}: row {i + 2} has {len(row)} cells, expected {len(header)}"
                )
            values = tuple(infer_value(c) for j, c in enumerate(row) if j != t)
            examples.append(Example(i, values, row[t].strip() == positive_value))
    return Dataset(schema, tuple(examples))


def split_examples(d: Dataset) -> tuple[tuple[Example, ...], tuple[Example, ...]]:
    """Partition into (positives, negatives), both in input order."""
    pos = tuple(e for e in d.examples if e.label)
    neg = tuple(e for e in d.examples if not e.label)
    return pos, neg


def make_folds(d: Dataset, k: int, seed: int) -> list[tuple[Dataset, Dataset]]:
    """Seeded, unstratified k-fold split into (train, test) dataset pairs.

    Test folds are pairwise disjoint, jointly exhaustive, and near-equal in
    size; the same (d, k, seed) always yields identical folds.
    """
    n = len(d.examples)
    if k < 2 or k > n:
        raise ValueError(f"fold count must be between 2 and {n}, got {k}")
    order = list(d.examples)
    random.Random(seed).shuffle(order)
    folds = []
    base, extra = divmod(n, k)
    start = 0
    for j in range(k):
        stop = start + base + (1 if j < extra else 0)
        test = tuple(order[start:stop])
        train = tuple(order[:start]) + tuple(order[stop:])
        folds.append((Dataset(d.schema, train), Dataset(d.schema, test)))
        start = stop
    return folds
