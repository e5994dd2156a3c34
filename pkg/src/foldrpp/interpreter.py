"""Classify records with a learned program and justify each prediction.

Only the restricted program class the learner emits is handled: stratified
rules over one subject variable whose bodies test feature values and negate
abnormal predicates.  Evaluation is top-down per rule with the truth of each
abnormal predicate memoized per record, so one classification is linear in
the program size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .asp import _lookup, _numeric_phrase, head_sentence, resolve_templates
from .data import MISSING, Value
from .errors import SchemaMismatchError, StratificationError
from .heuristics import Literal, Op, evaluate_literal
from .learner import Program, Rule, ab_reference_order


@dataclass(frozen=True, slots=True)
class Record:
    """Feature values aligned to a program's schema; no label.

    rid is a caller-supplied row id used only in justification sentences.
    """

    values: tuple[Value, ...]
    rid: Optional[int] = None


@dataclass
class JustificationNode:
    """One proof step: `sentence` states an atom or comparison, `holds` its
    truth.  Renderers phrase holds=False nodes as "there is no evidence
    that ...", and children account for why the statement holds or fails."""

    sentence: str
    holds: bool
    children: list["JustificationNode"] = field(default_factory=list)


@dataclass
class Prediction:
    label: bool
    fired_rule: Optional[int]
    tree: JustificationNode


def _record_values(p: Program, record: Record):
    if len(record.values) != len(p.schema.feature_names):
        raise SchemaMismatchError(
            f"record has {len(record.values)} values, schema expects "
            f"{len(p.schema.feature_names)}"
        )
    return record.values


def record_from_mapping(p: Program, named: dict[str, Value], rid: Optional[int] = None) -> Record:
    """Align named values to the program's schema; unnamed slots are missing.

    Useful with parsed models, whose schemas keep only the features the rule
    text mentions (in possibly different positions than the training data).
    """
    return Record(tuple(named.get(n, MISSING) for n in p.schema.feature_names), rid)


def _fires(rule: Rule, values, p: Program, cache: dict) -> bool:
    for lit in rule.defaults:
        if not evaluate_literal(lit, values[lit.feature]):
            return False
    return not any(_ab_holds(k, values, p, cache) for k in rule.exceptions)


def _ab_holds(k: int, values, p: Program, cache: dict) -> bool:
    got = cache.get(k)
    if got is None:
        try:
            clauses = p.ab_rules[k]
        except KeyError:
            raise StratificationError(f"dangling abnormal reference ab{k}") from None
        got = any(_fires(r, values, p, cache) for r in clauses)
        cache[k] = got
    return got


def _first_firing(p: Program, values) -> Optional[int]:
    cache: dict = {}
    for idx, r in enumerate(p.rules):
        if _fires(r, values, p, cache):
            return idx
    return None


def classify(p: Program, record: Record) -> bool:
    """True iff some target rule holds on the record, trying rules in
    emission order and evaluating abnormal predicates recursively."""
    return _first_firing(p, _record_values(p, record)) is not None


def fixpoint_oracle(p: Program, record: Record) -> bool:
    """Reference semantics: ground the program on the record and evaluate
    bottom-up, lowest abnormal stratum first.  Test oracle for classify."""
    values = _record_values(p, record)

    def body_true(rule: Rule, truth: dict) -> bool:
        return all(
            evaluate_literal(lit, values[lit.feature]) for lit in rule.defaults
        ) and not any(truth[j] for j in rule.exceptions)

    truth: dict[int, bool] = {}
    for k in ab_reference_order(p):
        truth[k] = any(body_true(r, truth) for r in p.ab_rules[k])
    return any(body_true(r, truth) for r in p.rules)


# --- justification ----------------------------------------------------------


class _Justifier:
    def __init__(self, p: Program, values, subject: str, templates: dict):
        self.p = p
        self.values = values
        self.subject = subject
        self.templates = templates
        self.cache: dict = {}

    def literal_node(self, lit: Literal) -> JustificationNode:
        """Node for the positive atom under a default literal.

        For NE literals the stated atom is the equality being negated, so a
        satisfied NE yields holds=False ("no evidence that ...") while a
        failed NE yields the positive fact that blocked the rule.
        """
        name = self.p.schema.feature_names[lit.feature]
        t = _lookup(self.templates, name)
        if lit.op in (Op.LE, Op.GT):
            phrase = _numeric_phrase(lit.op, lit.constant)
            if t.arity == 2:
                sentence = t.instantiate(self.subject, phrase)
            else:
                sentence = f"the {name} of {self.subject} is {phrase}"
            holds = evaluate_literal(lit, self.values[lit.feature])
        else:
            tok = lit.constant.token
            sentence = t.instantiate(self.subject) if t.arity == 1 else t.instantiate(self.subject, tok)
            eq = Literal(lit.feature, Op.EQ, lit.constant)
            holds = evaluate_literal(eq, self.values[lit.feature])
        return JustificationNode(sentence, holds)

    def ab_sentence(self, k: int) -> str:
        return _lookup(self.templates, f"ab{k}").instantiate(self.subject)

    def condition_nodes(self, rule: Rule) -> list[JustificationNode]:
        """Children of a rule known to hold: every literal at its actual
        truth and every exception as a failing abnormal atom."""
        nodes = [self.literal_node(lit) for lit in rule.defaults]
        for k in rule.exceptions:
            children = [self.failure_node(clause) for clause in self.p.ab_rules[k]]
            nodes.append(JustificationNode(self.ab_sentence(k), False, children))
        return nodes

    def failure_node(self, rule: Rule) -> JustificationNode:
        """Leftmost failing condition of a rule known not to hold."""
        for lit in rule.defaults:
            if not evaluate_literal(lit, self.values[lit.feature]):
                return self.literal_node(lit)
        for k in rule.exceptions:
            if _ab_holds(k, self.values, self.p, self.cache):
                for clause in self.p.ab_rules[k]:
                    if _fires(clause, self.values, self.p, self.cache):
                        children = self.condition_nodes(clause)
                        return JustificationNode(self.ab_sentence(k), True, children)
        raise AssertionError("failure_node called on a rule that holds")


def justify(p: Program, record: Record, templates: Optional[dict] = None) -> Prediction:
    """Explain the classification of one record.

    Positive: the tree roots at the first firing rule's head with one child
    per body condition.  Negative: the root fails and each target rule
    contributes its leftmost failing condition.
    """
    values = _record_values(p, record)
    subject = "X" if record.rid is None else str(record.rid)
    templates = resolve_templates(p, templates, strict=False)
    j = _Justifier(p, values, subject, templates)
    head = head_sentence(p, templates, subject)
    fired = _first_firing(p, values)
    if fired is not None:
        tree = JustificationNode(head, True, j.condition_nodes(p.rules[fired]))
    else:
        tree = JustificationNode(head, False, [j.failure_node(r) for r in p.rules])
    return Prediction(fired is not None, fired, tree)


def render_justification(node: JustificationNode) -> str:
    """Indented text form; failing statements read "there is no evidence
    that ...", nodes with children end in ", because", and siblings are
    joined with ", and"."""
    lines: list[str] = []

    def emit(n: JustificationNode, indent: int, last: bool) -> None:
        sentence = n.sentence if n.holds else f"there is no evidence that {n.sentence}"
        if n.children:
            suffix = ", because"
        else:
            suffix = "" if last else ", and"
        lines.append("    " * indent + sentence + suffix)
        for i, child in enumerate(n.children):
            emit(child, indent + 1, i == len(n.children) - 1)

    emit(node, 0, True)
    return "\n".join(lines)


def justification_to_dict(node: JustificationNode) -> dict:
    return {
        "sentence": node.sentence,
        "holds": node.holds,
        "children": [justification_to_dict(c) for c in node.children],
    }


def justification_to_json(node: JustificationNode) -> str:
    return json.dumps(justification_to_dict(node), indent=2)
