"""Literal scoring: guarded information gain over confusion counts, plus the
single-pass prefix-sum search for the best literal of a feature.

The search sorts the unique numeric values of a feature once and turns the
per-value example counts into running (prefix) sums, after which every
threshold's confusion quadruple is read off in O(1).  Scoring all candidate
literals of one feature therefore costs O(M + N log N) for M examples and N
unique values, instead of reclassifying all M examples per threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, NamedTuple, Optional, Sequence

from .data import Example, Value, ValueKind

NEG_INF = float("-inf")


class Op(IntEnum):
    """Comparison kinds; the numeric order doubles as the tie-break order."""

    LE = 0
    GT = 1
    EQ = 2
    NE = 3


@dataclass(frozen=True, slots=True)
class Literal:
    """A test on one feature: (feature index, op, constant).

    LE/GT carry a numeric constant, EQ/NE a categorical token (missing cells
    take part in EQ/NE through the reserved token "?").
    """

    feature: int
    op: Op
    constant: Value

    def sort_key(self):
        c = self.constant
        const = c.num if c.kind is ValueKind.NUMERIC else c.token
        return (self.feature, self.op.value, const)

    def __str__(self) -> str:
        sym = {Op.LE: "=<", Op.GT: ">", Op.EQ: "==", Op.NE: "!="}[self.op]
        return f"[{self.feature}]{sym}{self.constant.render()}"


def evaluate_literal(lit: Literal, v: Value) -> bool:
    """Truth of one literal on one cell.

    Cross-type rule: numeric comparisons fail on categorical/missing cells,
    equality fails on numeric cells, and hence NE holds on every numeric cell.
    """
    op = lit.op
    if op is Op.LE:
        return v.kind is ValueKind.NUMERIC and v.num <= lit.constant.num
    if op is Op.GT:
        return v.kind is ValueKind.NUMERIC and v.num > lit.constant.num
    hit = v.kind is not ValueKind.NUMERIC and v.token == lit.constant.token
    return hit if op is Op.EQ else not hit


class ConfusionCounts(NamedTuple):
    tp: int
    fn: int
    tn: int
    fp: int


def ig(c: ConfusionCounts) -> float:
    """Information gain of a literal's confusion counts; closer to 0 is better.

    Returns -inf when the literal misclassifies more than it classifies
    (fp + fn > tp + tn) or when a side of the split is empty, which would
    leave a ratio term undefined.  Logarithms are natural; the base only
    scales every finite score, so selection does not depend on it.
    """
    tp, fn, tn, fp = c
    if fp + fn > tp + tn:
        return NEG_INF
    pos = tp + fp
    neg = tn + fn
    if pos == 0 or neg == 0:  # also covers the all-zero quadruple
        return NEG_INF
    tot = pos + neg
    log = math.log
    result = 0.0
    if tp:
        result += tp / tot * log(tp / pos)
    if fp:
        result += fp / tot * log(fp / pos)
    if tn:
        result += tn / tot * log(tn / neg)
    if fn:
        result += fn / tot * log(fn / neg)
    return result


@dataclass(slots=True)
class FeatureTally:
    """Per-value example counts of one feature, prefix-summed over numerics.

    After construction, pos[x]/neg[x] for x in xs hold cumulative counts of
    examples with numeric value <= x; categorical keys in the same tables
    keep plain per-token counts.  xp/xn and cp/cn are the numeric and
    categorical example totals per class.
    """

    pos: dict
    neg: dict
    xs: list
    cs: list
    xp: int
    xn: int
    cp: int
    cn: int


def tally_feature(e_pos: Sequence[Example], e_neg: Sequence[Example], i: int) -> FeatureTally:
    pos: dict = {}
    neg: dict = {}
    xp = xn = cp = cn = 0
    numeric = ValueKind.NUMERIC
    for e in e_pos:
        v = e.values[i]
        if v.kind is numeric:
            x = v.num
            pos[x] = pos.get(x, 0) + 1
            xp += 1
        else:
            t = v.token
            pos[t] = pos.get(t, 0) + 1
            cp += 1
    for e in e_neg:
        v = e.values[i]
        if v.kind is numeric:
            x = v.num
            neg[x] = neg.get(x, 0) + 1
            xn += 1
        else:
            t = v.token
            neg[t] = neg.get(t, 0) + 1
            cn += 1
    keys = pos.keys() | neg.keys()
    xs = sorted(k for k in keys if not isinstance(k, str))
    cs = sorted(k for k in keys if isinstance(k, str))
    run_p = run_n = 0
    for x in xs:
        run_p += pos.get(x, 0)
        run_n += neg.get(x, 0)
        pos[x] = run_p
        neg[x] = run_n
    for c in cs:
        pos.setdefault(c, 0)
        neg.setdefault(c, 0)
    return FeatureTally(pos, neg, xs, cs, xp, xn, cp, cn)


def candidate_counts(t: FeatureTally, i: int) -> Iterator[tuple[Literal, ConfusionCounts]]:
    """Yield every candidate literal of feature i with its confusion counts.

    Cross-type examples land on the failing side: categorical cells are
    false negatives of every numeric test, and numeric cells satisfy every
    NE test, mirroring evaluate_literal.
    """
    pos, neg = t.pos, t.neg
    xp, xn, cp, cn = t.xp, t.xn, t.cp, t.cn
    for x in t.xs:
        p, n = pos[x], neg[x]
        yield Literal(i, Op.LE, Value.numeric(x)), ConfusionCounts(p, xp - p + cp, xn - n + cn, n)
        yield Literal(i, Op.GT, Value.numeric(x)), ConfusionCounts(xp - p, p + cp, n + cn, xn - n)
    for c in t.cs:
        p, n = pos[c], neg[c]
        yield Literal(i, Op.EQ, Value.categorical(c)), ConfusionCounts(p, cp - p + xp, cn - n + xn, n)
        yield Literal(i, Op.NE, Value.categorical(c)), ConfusionCounts(cp - p + xp, p, n, cn - n + xn)


@dataclass(slots=True)
class IgCounter:
    """Counts ig evaluations, letting tests pin the per-feature work bound."""

    calls: int = 0


def best_info_gain(
    e_pos: Sequence[Example],
    e_neg: Sequence[Example],
    i: int,
    excluded: frozenset = frozenset(),
    counter: Optional[IgCounter] = None,
) -> Optional[tuple[float, Literal]]:
    """Best literal of feature i by information gain, or None.

    Exactly one ig evaluation per candidate not in `excluded`: two per unique
    numeric value and two per unique token.  Ties prefer LE < GT < EQ < NE,
    then the smaller constant, so selection is deterministic.
    """
    t = tally_feature(e_pos, e_neg, i)
    best_score = NEG_INF
    best_lit: Optional[Literal] = None
    best_key = None
    for lit, counts in candidate_counts(t, i):
        if lit in excluded:
            continue
        if counter is not None:
            counter.calls += 1
        score = ig(counts)
        if score == NEG_INF:
            continue
        key = lit.sort_key()
        if best_lit is None or score > best_score or (score == best_score and key < best_key):
            best_score, best_lit, best_key = score, lit, key
    if best_lit is None:
        return None
    return best_score, best_lit


def find_best_literal(
    e_pos: Sequence[Example],
    e_neg: Sequence[Example],
    excluded: frozenset = frozenset(),
    counter: Optional[IgCounter] = None,
) -> Optional[tuple[float, Literal]]:
    """Global argmax of best_info_gain across all features, or None if every
    candidate everywhere is -inf.  Ties prefer the lower feature index."""
    if e_pos:
        n_features = len(e_pos[0].values)
    elif e_neg:
        n_features = len(e_neg[0].values)
    else:
        return None
    best = None
    for i in range(n_features):
        found = best_info_gain(e_pos, e_neg, i, excluded, counter)
        if found is not None and (best is None or found[0] > best[0]):
            best = found
    return best
