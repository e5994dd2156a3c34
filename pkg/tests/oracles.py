"""Independent reference implementations used only to check the fast paths.

Everything here recomputes results the slow, obvious way: candidate literals
are scored by reclassifying every example (the O(M*N) search the prefix-sum
code replaces), and rule semantics are evaluated by direct recursion with no
memoization or incremental filtering.
"""

from __future__ import annotations

import math

from foldrpp import ConfusionCounts, Literal, Op, Value, ValueKind, evaluate_literal


def count_confusion(lit: Literal, e_pos, e_neg) -> ConfusionCounts:
    """Classify every example with the literal and count the quadruple."""
    tp = sum(1 for e in e_pos if evaluate_literal(lit, e.values[lit.feature]))
    fn = len(e_pos) - tp
    fp = sum(1 for e in e_neg if evaluate_literal(lit, e.values[lit.feature]))
    tn = len(e_neg) - fp
    return ConfusionCounts(tp, fn, tn, fp)


def scaled_ig(c: ConfusionCounts, base: float) -> float:
    """The same guarded gain in an arbitrary log base (selection must not
    depend on the base, so any positive rescaling is a valid scorer)."""
    tp, fn, tn, fp = c
    if fp + fn > tp + tn:
        return float("-inf")
    pos, neg = tp + fp, tn + fn
    if pos == 0 or neg == 0:
        return float("-inf")
    tot = pos + neg
    out = 0.0
    for num, den in ((tp, pos), (fp, pos), (tn, neg), (fn, neg)):
        if num:
            out += num / tot * math.log(num / den, base)
    return out


def all_candidate_literals(e_pos, e_neg, i: int) -> list[Literal]:
    """Every candidate of feature i: both numeric ops per unique observed
    number, both equality ops per unique observed token."""
    numerics, tokens = set(), set()
    for e in list(e_pos) + list(e_neg):
        v = e.values[i]
        if v.kind is ValueKind.NUMERIC:
            numerics.add(v.num)
        else:
            tokens.add(v.token)
    lits = []
    for x in sorted(numerics):
        lits.append(Literal(i, Op.LE, Value.numeric(x)))
        lits.append(Literal(i, Op.GT, Value.numeric(x)))
    for t in sorted(tokens):
        lits.append(Literal(i, Op.EQ, Value.categorical(t)))
        lits.append(Literal(i, Op.NE, Value.categorical(t)))
    return lits


def enumerate_best_literal(e_pos, e_neg, excluded=frozenset(), scorer=None):
    """Exhaustive enumerate-and-classify search over all features.

    O(M*N) per feature; ties broken exactly like the library (score, then
    feature, op order, constant).  Returns (score, literal, counts) or None.
    """
    from foldrpp import ig

    scorer = scorer or ig
    n_features = len(e_pos[0].values) if e_pos else (len(e_neg[0].values) if e_neg else 0)
    best = None
    for i in range(n_features):
        for lit in all_candidate_literals(e_pos, e_neg, i):
            if lit in excluded:
                continue
            counts = count_confusion(lit, e_pos, e_neg)
            score = scorer(counts)
            if score == float("-inf"):
                continue
            key = lit.sort_key()
            if best is None or score > best[0] or (score == best[0] and key < best[3]):
                best = (score, lit, counts, key)
    if best is None:
        return None
    return best[0], best[1], best[2]


def truth_table_rule(rule, values, program) -> bool:
    """Plain recursive rule semantics: all defaults hold and no referenced
    abnormal predicate (any of its clauses) holds."""
    if not all(evaluate_literal(lit, values[lit.feature]) for lit in rule.defaults):
        return False
    for k in rule.exceptions:
        if any(truth_table_rule(r, values, program) for r in program.ab_rules[k]):
            return False
    return True
