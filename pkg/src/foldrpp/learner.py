"""Sequential-covering rule learner.

Each rule starts as a conjunction of the best-gain literals (the defaults);
once the remaining negatives fall under the ratio gate, the residual
positives and negatives are swapped and the learner recurses to produce the
rule's exceptions as abnormal predicates.  Exceptions of exceptions arise the
same way, so the output program is stratified by construction.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .data import Dataset, Example, Schema, split_examples
from .errors import DataError, StratificationError
from .heuristics import Literal, evaluate_literal, find_best_literal


@dataclass(frozen=True, slots=True)
class Hyperparams:
    """ratio bounds how many covered negatives a rule may hand to its
    exception branch: default learning stops once |E-| <= |E+| * ratio."""

    ratio: float = 0.5

    def __post_init__(self):
        if self.ratio < 0:
            raise ValueError(f"ratio must be >= 0, got {self.ratio}")


@dataclass
class Rule:
    """Default literals plus negated references to abnormal predicates.

    head is (target name, class token) for top-level rules and None for the
    bodies of abnormal predicates.
    """

    defaults: list[Literal] = field(default_factory=list)
    exceptions: list[int] = field(default_factory=list)
    head: Optional[tuple[str, str]] = None


@dataclass
class Program:
    """An ordered rule set plus its abnormal-predicate definitions.

    ab_rules maps each abnormal id to its clause bodies; next_ab is the
    naming state for fresh ids.  The reference graph rule -> exception ids is
    acyclic for every program this module produces.
    """

    schema: Schema
    rules: list[Rule] = field(default_factory=list)
    ab_rules: dict[int, list[Rule]] = field(default_factory=dict)
    next_ab: int = 0

    def add_ab(self, rule: Rule) -> int:
        k = self.next_ab
        self.ab_rules[k] = [rule]
        self.next_ab += 1
        return k

    def clause_count(self) -> int:
        return len(self.rules) + sum(len(rs) for rs in self.ab_rules.values())


def ab_reference_order(p: Program) -> list[int]:
    """Topological order of the abnormal predicates, dependencies first.

    Raises StratificationError on a dangling reference or a cycle; success
    certifies the program is stratified.
    """
    deps: dict[int, set[int]] = {}
    for k, rules in p.ab_rules.items():
        deps[k] = set()
        for r in rules:
            for j in r.exceptions:
                if j not in p.ab_rules:
                    raise StratificationError(f"clause of ab{k} references undefined ab{j}")
                deps[k].add(j)
    for r in p.rules:
        for j in r.exceptions:
            if j not in p.ab_rules:
                raise StratificationError(f"target rule references undefined ab{j}")
    try:
        return list(graphlib.TopologicalSorter(deps).static_order())
    except graphlib.CycleError as exc:
        raise StratificationError(f"abnormal predicates form a cycle: {exc.args[1]}") from exc


def _ab_true(k: int, values, prog: Program) -> bool:
    try:
        clauses = prog.ab_rules[k]
    except KeyError:
        raise StratificationError(f"dangling abnormal reference ab{k}") from None
    return any(_rule_true(r, values, prog) for r in clauses)


def _rule_true(r: Rule, values, prog: Program) -> bool:
    for lit in r.defaults:
        if not evaluate_literal(lit, values[lit.feature]):
            return False
    return not any(_ab_true(k, values, prog) for k in r.exceptions)


def covers(r: Rule, examples: Sequence[Example], sign: bool, prog: Program) -> list[Example]:
    """Examples the rule classifies as `sign`, in input order.

    A rule holds on an example when every default literal is true and no
    referenced abnormal predicate (evaluated recursively) holds.
    """
    return [e for e in examples if _rule_true(r, e.values, prog) == sign]


def learn_rule(
    e_pos: Sequence[Example],
    e_neg: Sequence[Example],
    used: frozenset,
    hp: Hyperparams,
    prog: Program,
) -> Rule:
    """Grow one rule.

    Literals are added greedily; after each one the example sets shrink to
    what the partial rule still covers.  The loop exits either on an invalid
    literal (no finite-gain candidate: the default phase just ends) or when
    the ratio gate fires, in which case the surviving negatives are learned
    away as exceptions by recursing with the classes swapped.
    """
    r = Rule()
    chosen: set[Literal] = set()
    gate = False
    while True:
        found = find_best_literal(e_pos, e_neg, used | chosen)
        if found is None:
            break
        lit = found[1]
        r.defaults.append(lit)
        chosen.add(lit)
        e_pos = covers(r, e_pos, True, prog)
        e_neg = covers(r, e_neg, True, prog)
        if len(e_neg) <= len(e_pos) * hp.ratio:
            gate = True
            break
    if gate and e_neg:
        for ab_rule in fold_rpp(e_neg, e_pos, used | chosen, hp, prog):
            r.exceptions.append(prog.add_ab(ab_rule))
    return r


def fold_rpp(
    e_pos: Sequence[Example],
    e_neg: Sequence[Example],
    used: frozenset,
    hp: Hyperparams,
    prog: Program,
) -> list[Rule]:
    """Sequential covering: learn rules until no positive example remains.

    A rule that ends up vacuous (no defaults) or covers none of the remaining
    positives is dropped and stops the loop; without this the loop could spin
    forever or emit an accept-all rule.
    """
    rules: list[Rule] = []
    remaining = list(e_pos)
    while remaining:
        r = learn_rule(remaining, e_neg, used, hp, prog)
        covered = covers(r, remaining, True, prog)
        if not r.defaults or not covered:
            break
        rules.append(r)
        covered_ids = {e.id for e in covered}
        remaining = [e for e in remaining if e.id not in covered_ids]
    return rules


def _prune_unreferenced(prog: Program) -> None:
    """Drop abnormal predicates no surviving rule can reach (rules discarded
    by the covering loop may have registered exceptions)."""
    reachable: set[int] = set()
    stack = [k for r in prog.rules for k in r.exceptions]
    while stack:
        k = stack.pop()
        if k in reachable:
            continue
        reachable.add(k)
        for r in prog.ab_rules[k]:
            stack.extend(r.exceptions)
    prog.ab_rules = {k: prog.ab_rules[k] for k in sorted(reachable)}


def fit(d: Dataset, hp: Hyperparams | None = None) -> Program:
    """Learn a Program for the schema's positive class.

    Deterministic: identical (dataset, hyperparams) always produce an
    identical program.
    """
    if not d.schema.feature_names:
        raise DataError("dataset has no feature columns")
    if not d.examples:
        raise DataError("dataset has no examples")
    hp = hp or Hyperparams()
    prog = Program(schema=d.schema)
    e_pos, e_neg = split_examples(d)
    head = (d.schema.target_name, d.schema.positive_value)
    for r in fold_rpp(e_pos, e_neg, frozenset(), hp, prog):
        r.head = head
        prog.rules.append(r)
    _prune_unreferenced(prog)
    return prog
