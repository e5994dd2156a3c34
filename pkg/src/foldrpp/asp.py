"""Rule text: render programs as answer-set-program clauses, parse that text
back, and translate both into English.

The grammar covers exactly the fragment the emitter produces (plus the
redundant repeated feature atoms that hand-written files sometimes contain),
which keeps the parser small and makes the round trip total: for any program
p, parse_asp(emit_asp(p)) classifies every record the same way p does.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count
from typing import Optional

from .data import Schema, Value, ValueKind
from .errors import AspSyntaxError, DataError, MissingTemplateError, StratificationError
from .heuristics import Literal, Op
from .learner import Program, Rule, ab_reference_order

_SAFE_NAME = re.compile(r"[a-z][a-zA-Z0-9_]*$")
_AB_NAME = re.compile(r"ab(\d+)$")
_NUM_VAR = re.compile(r"N(\d+)$")
_BARE_NUMBER = re.compile(r"-?\d+(\.\d+)?$")
TRUE_TOKEN = "true"


def _escape(token: str) -> str:
    return token.replace("\\", "\\\\").replace("'", "\\'")


def _unescape(text: str) -> str:
    return text.replace("\\'", "'").replace("\\\\", "\\")


def _render_name(name: str) -> str:
    if _AB_NAME.match(name):
        raise DataError(f"predicate name {name!r} collides with the abnormal-rule namespace")
    if _SAFE_NAME.match(name) and name != "not":
        return name
    return f"'{_escape(name)}'"


def _render_head(name: str, cls: str) -> str:
    pred = _render_name(name)
    if cls == TRUE_TOKEN:
        return f"{pred}(X)"
    if _BARE_NUMBER.match(cls):
        return f"{pred}(X,{cls})"
    return f"{pred}(X,'{_escape(cls)}')"


def _render_body(rule: Rule, schema: Schema) -> list[str]:
    parts: list[str] = []
    bound: set[int] = set()
    for lit in rule.defaults:
        name = _render_name(schema.feature_names[lit.feature])
        if lit.op in (Op.LE, Op.GT):
            var = f"N{lit.feature + 1}"
            if lit.feature not in bound:
                bound.add(lit.feature)
                parts.append(f"{name}(X,{var})")
            sym = "=<" if lit.op is Op.LE else ">"
            parts.append(f"{var}{sym}{repr(lit.constant.num)}")
        else:
            tok = lit.constant.token
            atom = f"{name}(X)" if tok == TRUE_TOKEN else f"{name}(X,'{_escape(tok)}')"
            parts.append(atom if lit.op is Op.EQ else f"not {atom}")
    parts.extend(f"not ab{k}(X)" for k in rule.exceptions)
    return parts


def emit_asp(p: Program) -> str:
    """Serialize a stratified program, one clause per line.

    Target rules come first in order, then abnormal clauses by ascending id.
    Numeric thresholds use the shortest round-trip decimal with at least one
    fractional digit; the comparison token is "=<".  Output is byte-stable.
    """
    ab_reference_order(p)
    lines = []
    for r in p.rules:
        name, cls = r.head if r.head else (p.schema.target_name, p.schema.positive_value)
        lines.append(_clause_text(_render_head(name, cls), r, p.schema))
    for k in sorted(p.ab_rules):
        for r in p.ab_rules[k]:
            lines.append(_clause_text(f"ab{k}(X)", r, p.schema))
    return "".join(line + "\n" for line in lines)


def _clause_text(head: str, rule: Rule, schema: Schema) -> str:
    parts = _render_body(rule, schema)
    if not parts:
        return f"{head}."
    return f"{head} :- {', '.join(parts)}."


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>%[^\n]*)
      | (?P<neck>:-)
      | (?P<le>=<)
      | (?P<gt>>)
      | (?P<lpar>\()
      | (?P<rpar>\))
      | (?P<comma>,)
      | (?P<number>-?\d+(\.\d+)?([eE][+-]?\d+)?)
      | (?P<dot>\.)
      | (?P<quoted>'(?:[^'\\]|\\.)*')
      | (?P<name>[a-zA-Z_][a-zA-Z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise AspSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        raw = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, raw, line, col))
        newlines = raw.count("\n")
        if newlines:
            line += newlines
            col = len(raw) - raw.rfind("\n")
        else:
            col += len(raw)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


def _is_var(text: str) -> bool:
    return text[0].isupper() or text[0] == "_"


@dataclass
class _RawClause:
    head_name: str
    head_class: str  # "true" for the propositional head form
    items: list  # ("eq"|"ne", name, token) | ("bind", name, var) |
    #              ("cmp", var, Op, float) | ("abref", id)
    line: int


class _ClauseReader:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self, kind: str | None = None) -> _Token:
        tok = self.tokens[self.i]
        if kind is not None and tok.kind != kind:
            raise AspSyntaxError(f"expected {kind}, got {tok.text!r}", tok.line, tok.col)
        self.i += 1
        return tok

    def _fail(self, message: str) -> AspSyntaxError:
        tok = self.peek()
        return AspSyntaxError(message, tok.line, tok.col)

    def atom(self):
        """-> (name, args) with args a list of ('var'|'quoted'|'name'|'number', text)."""
        tok = self.peek()
        if tok.kind == "quoted":
            name = _unescape(tok.text[1:-1])
            self.next()
        elif tok.kind == "name":
            name = tok.text
            self.next()
        else:
            raise self._fail(f"expected a predicate name, got {tok.text!r}")
        self.next("lpar")
        args = []
        while True:
            t = self.peek()
            if t.kind == "quoted":
                args.append(("quoted", _unescape(t.text[1:-1])))
            elif t.kind == "number":
                args.append(("number", t.text))
            elif t.kind == "name":
                args.append(("var" if _is_var(t.text) else "name", t.text))
            else:
                raise self._fail(f"expected a term, got {t.text!r}")
            self.next()
            if self.peek().kind == "comma":
                self.next()
                continue
            break
        self.next("rpar")
        if not 1 <= len(args) <= 2:
            raise AspSyntaxError(f"unknown predicate arity {len(args)} for {name!r}", tok.line, tok.col)
        return name, args

    def clause(self) -> _RawClause:
        start = self.peek()
        head_name, head_args = self.atom()
        if head_args[0][0] != "var":
            raise AspSyntaxError("head argument must be a variable", start.line, start.col)
        head_var = head_args[0][1]
        if len(head_args) == 1:
            head_class = TRUE_TOKEN
        else:
            kind, text = head_args[1]
            if kind == "var":
                raise AspSyntaxError("head class must be a constant", start.line, start.col)
            head_class = text
        items: list = []
        if self.peek().kind == "neck":
            self.next()
            while True:
                items.append(self._body_item(head_var))
                if self.peek().kind == "comma":
                    self.next()
                    continue
                break
        self.next("dot")
        return _RawClause(head_name, head_class, items, start.line)

    def _body_item(self, head_var: str):
        tok = self.peek()
        if tok.kind == "name" and tok.text == "not":
            self.next()
            name, args = self.atom()
            return self._atom_item(name, args, head_var, negated=True, at=tok)
        if tok.kind == "name" and _is_var(tok.text):
            var = tok.text
            self.next()
            op_tok = self.next()
            if op_tok.kind == "le":
                op = Op.LE
            elif op_tok.kind == "gt":
                op = Op.GT
            else:
                raise AspSyntaxError(f"expected =< or >, got {op_tok.text!r}", op_tok.line, op_tok.col)
            num = self.next("number")
            return ("cmp", var, op, float(num.text), op_tok.line, op_tok.col)
        name, args = self.atom()
        return self._atom_item(name, args, head_var, negated=False, at=tok)

    def _atom_item(self, name, args, head_var, negated, at):
        if args[0] != ("var", head_var):
            raise AspSyntaxError(
                f"body atom must use the head variable {head_var}", at.line, at.col
            )
        ab = _AB_NAME.match(name)
        if ab:
            if len(args) != 1:
                raise AspSyntaxError(f"unknown predicate arity for {name}", at.line, at.col)
            if not negated:
                raise AspSyntaxError("abnormal atoms appear only under not", at.line, at.col)
            return ("abref", int(ab.group(1)))
        if len(args) == 1:
            return ("ne" if negated else "eq", name, TRUE_TOKEN, at.line, at.col)
        kind, text = args[1]
        if kind == "var":
            if negated:
                raise AspSyntaxError("numeric feature atoms cannot be negated", at.line, at.col)
            return ("bind", name, text, at.line, at.col)
        return ("ne" if negated else "eq", name, text, at.line, at.col)


def parse_asp(text: str) -> Program:
    """Parse clause text in the emitted grammar back into a Program.

    Feature indices are pinned from the numeric variables (Nk binds feature
    index k-1); remaining features fill the free slots in order of first
    appearance, and never-mentioned slots get placeholder names.  A feature
    atom that binds a variable no comparison uses adds no literal, matching
    the hand-written files that repeat atoms redundantly.
    """
    reader = _ClauseReader(text)
    raw: list[_RawClause] = []
    while reader.peek().kind != "eof":
        raw.append(reader.clause())

    target: Optional[tuple[str, str]] = None
    pinned: dict[str, int] = {}
    order: list[str] = []
    for clause in raw:
        if not _AB_NAME.match(clause.head_name):
            head = (clause.head_name, clause.head_class)
            if target is None:
                target = head
            elif target != head:
                raise AspSyntaxError(
                    f"conflicting rule heads {target} and {head}", clause.line, 1
                )
        local_vars: dict[str, str] = {}
        for item in clause.items:
            if item[0] in ("eq", "ne"):
                _, name, _tok, line, col = item
                if name not in order:
                    order.append(name)
            elif item[0] == "bind":
                _, name, var, line, col = item
                if local_vars.get(var, name) != name:
                    raise AspSyntaxError(
                        f"variable {var} bound to two features", line, col
                    )
                local_vars[var] = name
                if name not in order:
                    order.append(name)
                m = _NUM_VAR.match(var)
                if m:
                    idx = int(m.group(1)) - 1
                    if pinned.get(name, idx) != idx:
                        raise AspSyntaxError(
                            f"feature {name!r} bound to two numeric variables", line, col
                        )
                    pinned[name] = idx

    slots: dict[int, str] = {}
    for name, idx in pinned.items():
        if idx in slots:
            raise AspSyntaxError(f"features {slots[idx]!r} and {name!r} share N{idx + 1}", 1, 1)
        slots[idx] = name
    free = (j for j in count() if j not in slots)
    for name in order:
        if name not in pinned:
            slots[next(free)] = name  # smallest free slot, appearance order
    width = max(slots) + 1 if slots else 0
    names = tuple(slots.get(j, f"_unused{j}") for j in range(width))

    if target is None:
        # Empty text, or abnormal clauses only: no class is ever concluded.
        placeholder = "_target"
        while placeholder in names:
            placeholder += "_"
        target = (placeholder, TRUE_TOKEN)
    schema = Schema(names, target[0], target[1])
    index = {name: j for j, name in slots.items()}

    prog = Program(schema=schema)
    for clause in raw:
        rule = Rule()
        local_vars: dict[str, str] = {}
        for item in clause.items:
            kind = item[0]
            if kind == "abref":
                rule.exceptions.append(item[1])
            elif kind == "bind":
                local_vars[item[2]] = item[1]
            elif kind == "cmp":
                _, var, op, num, line, col = item
                if var not in local_vars:
                    raise AspSyntaxError(f"comparison uses unbound variable {var}", line, col)
                rule.defaults.append(
                    Literal(index[local_vars[var]], op, Value.numeric(num))
                )
            else:
                _, name, tok, line, col = item
                op = Op.EQ if kind == "eq" else Op.NE
                rule.defaults.append(Literal(index[name], op, Value.categorical(tok)))
        ab = _AB_NAME.match(clause.head_name)
        if ab:
            prog.ab_rules.setdefault(int(ab.group(1)), []).append(rule)
        else:
            rule.head = target
            prog.rules.append(rule)
    prog.next_ab = max(prog.ab_rules, default=-1) + 1
    try:
        ab_reference_order(prog)
    except StratificationError as exc:
        # bad input text, not an internal invariant violation
        raise DataError(f"rule text is not stratified: {exc}") from exc
    return prog


# --- English templates -----------------------------------------------------


@dataclass(frozen=True)
class PredTemplate:
    """English template for one predicate; placeholder count equals arity.

    class_token specializes a two-place predicate for one value, e.g. a
    declaration like  status(X,0) :: 'person @(X) perished'.
    """

    name: str
    arity: int
    template: str
    class_token: Optional[str] = None

    def __post_init__(self):
        if self.template.count("@(") != self.arity:
            raise ValueError(
                f"template for {self.name!r} has {self.template.count('@(')} "
                f"placeholders, expected {self.arity}"
            )

    def instantiate(self, x: str, y: Optional[str] = None) -> str:
        out = self.template.replace("@(X)", x)
        if self.arity == 2:
            if y is None:
                raise ValueError(f"template for {self.name!r} needs a second argument")
            out = out.replace("@(Y)", y)
        return out


def make_templates(decls) -> dict:
    """Index PredTemplate objects by (name, class_token) for lookup."""
    return {(t.name, t.class_token): t for t in decls}


def default_templates(p: Program) -> dict:
    decls = [
        PredTemplate(name, 2, f"the {name} of @(X) is @(Y)")
        for name in p.schema.feature_names
    ]
    decls.append(
        PredTemplate(p.schema.target_name, 2, f"the {p.schema.target_name} of @(X) is @(Y)")
    )
    decls.extend(
        PredTemplate(f"ab{k}", 1, f"abnormal case {k} holds for @(X)") for k in p.ab_rules
    )
    return make_templates(decls)


def resolve_templates(p: Program, templates: Optional[dict], strict: bool) -> dict:
    if templates is None:
        return default_templates(p)
    if strict:
        return dict(templates)
    merged = default_templates(p)
    merged.update(templates)
    return merged


def _lookup(templates: dict, name: str, cls: Optional[str] = None) -> PredTemplate:
    t = templates.get((name, cls))
    if t is None and cls is not None:
        t = templates.get((name, None))
    if t is None:
        raise MissingTemplateError(f"no English template for predicate {name!r}")
    return t


def emit_pred_decls(p: Program, templates: Optional[dict] = None) -> str:
    """One #pred line per feature plus one per abnormal predicate."""
    templates = resolve_templates(p, templates, strict=False)
    lines = []
    for name in p.schema.feature_names:
        t = _lookup(templates, name)
        args = "(X,Y)" if t.arity == 2 else "(X)"
        lines.append(f"#pred {_render_name(name)}{args} :: '{t.template}'.")
    for k in sorted(p.ab_rules):
        t = _lookup(templates, f"ab{k}")
        lines.append(f"#pred ab{k}(X) :: '{t.template}'.")
    target = p.schema.target_name
    spec = templates.get((target, p.schema.positive_value))
    if spec is not None:
        head = _render_head(target, p.schema.positive_value)
        lines.append(f"#pred {head} :: '{spec.template}'.")
    return "".join(line + "\n" for line in lines)


_PRED_LINE = re.compile(
    r"""\#pred\s+
        (?: '(?P<qname>(?:[^'\\]|\\.)*)' | (?P<name>[a-zA-Z_]\w*) )
        \(\s*[A-Z_]\w*\s*
        (?: ,\s* (?: (?P<yvar>[A-Z_]\w*) | '(?P<qcls>(?:[^'\\]|\\.)*)' | (?P<cls>[^\s'),]+) ) \s*)?
        \)\s*::\s*'(?P<template>.*)'\s*\.\s*$
    """,
    re.VERBOSE,
)


def load_pred_decls(text: str) -> dict:
    """Read #pred declaration lines back into a template map."""
    decls = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        m = _PRED_LINE.match(line)
        if m is None:
            raise AspSyntaxError("malformed #pred declaration", lineno, 1)
        name = _unescape(m.group("qname")) if m.group("qname") else m.group("name")
        template = m.group("template")
        if m.group("yvar"):
            decls.append(PredTemplate(name, 2, template))
        else:
            cls = m.group("qcls")
            cls = _unescape(cls) if cls is not None else m.group("cls")
            decls.append(PredTemplate(name, 1, template, class_token=cls))
    return make_templates(decls)


# --- English rule rendering --------------------------------------------------


def head_sentence(p: Program, templates: dict, subject: str = "X") -> str:
    name, cls = p.schema.target_name, p.schema.positive_value
    t = _lookup(templates, name, cls)
    if t.arity == 1:
        return t.instantiate(subject)
    return t.instantiate(subject, cls)


def _numeric_phrase(op: Op, constant: Value) -> str:
    word = "less or equal" if op is Op.LE else "greater than"
    return f"{word} {constant.render()}"


def _rule_conditions(rule: Rule, p: Program, templates: dict) -> list[str]:
    conds: list[str] = []
    bound: set[int] = set()
    for lit in rule.defaults:
        name = p.schema.feature_names[lit.feature]
        t = _lookup(templates, name)
        if lit.op in (Op.LE, Op.GT):
            if lit.feature not in bound:
                bound.add(lit.feature)
                conds.append(t.instantiate("X", "Y") if t.arity == 2 else t.instantiate("X"))
            conds.append(f"Y is {_numeric_phrase(lit.op, lit.constant)}")
        else:
            tok = lit.constant.token
            sent = t.instantiate("X") if t.arity == 1 else t.instantiate("X", tok)
            conds.append(sent if lit.op is Op.EQ else f"there is no evidence that {sent}")
    for k in rule.exceptions:
        conds.append(f"there is no evidence that {_lookup(templates, f'ab{k}').instantiate('X')}")
    return conds


def _clause_english(head: str, rule: Rule, p: Program, templates: dict) -> str:
    conds = _rule_conditions(rule, p, templates)
    if not conds:
        return f"{head}.\n"
    lines = [f"{head}, if"]
    for j, cond in enumerate(conds):
        lines.append(f"    {cond}" + (" and" if j < len(conds) - 1 else "."))
    return "\n".join(lines) + "\n"


def explain_rules_english(p: Program, templates: Optional[dict] = None) -> str:
    """Render every clause as readable English, one block per clause.

    With templates=None each predicate falls back to a generic sentence;
    an explicit template map must cover every predicate the program uses.
    """
    templates = resolve_templates(p, templates, strict=templates is not None)
    blocks = []
    for r in p.rules:
        blocks.append(_clause_english(head_sentence(p, templates), r, p, templates))
    for k in sorted(p.ab_rules):
        head = _lookup(templates, f"ab{k}").instantiate("X")
        for r in p.ab_rules[k]:
            blocks.append(_clause_english(head, r, p, templates))
    return "\n".join(blocks)
