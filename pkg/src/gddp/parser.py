"""Problem and rule-file parsing for the two input languages.

Two problem formats are supported:

* a first-order subset (``.p``): ``fof(name, role, formula).`` statements
  with ``%`` comments, where formulas are universally quantified
  implications between conjunctions of predicate atoms and disequalities;
* a line-oriented constructive format (``.gdd``): one ``point`` line per
  point, each either free or built by a constructor, plus ``hypothesis``,
  ``goal`` and ``include`` lines, with ``#`` comments.

Rule files (``.rules``) use the first-order syntax.  Single-premise rules
that permute the arguments of one predicate are recognised as symmetry
declarations and absorbed into canonical forms; everything else becomes an
engine rule, validated for range restriction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError
from .facts import Fact, PREDICATES, arity, canonicalize, symmetry_group

#: constructor name -> number of point arguments
CONSTRUCTORS: dict[str, int] = {
    "free": 0,
    "midpoint": 2,
    "on_line": 2,
    "intersect": 4,
    "parallel_point": 3,
    "foot": 3,
    "rotate": 2,
    "parallel_intersect": 6,
}


@dataclass(frozen=True)
class Constructor:
    kind: str
    args: tuple[int, ...] = ()

    def emitted_facts(self, self_idx: int) -> tuple[Fact, ...]:
        """Hypothesis facts guaranteed by every successful realization."""
        x = self_idx
        a = self.args
        k = self.kind
        if k == "free":
            facts = []
        elif k == "midpoint":
            facts = [("midp", (x, a[0], a[1])), ("coll", (x, a[0], a[1]))]
        elif k == "on_line":
            facts = [
                ("coll", (x, a[0], a[1])),
                ("neq", (x, a[0])),
                ("neq", (x, a[1])),
                ("neq", (a[0], a[1])),
            ]
        elif k == "intersect":
            facts = [
                ("coll", (x, a[0], a[1])),
                ("coll", (x, a[2], a[3])),
                ("neq", (a[0], a[1])),
                ("neq", (a[2], a[3])),
            ]
        elif k == "parallel_point":
            facts = [
                ("para", (a[0], x, a[1], a[2])),
                ("neq", (x, a[0])),
                ("neq", (a[1], a[2])),
            ]
        elif k == "foot":
            facts = [
                ("coll", (x, a[1], a[2])),
                ("perp", (a[0], x, a[1], a[2])),
                ("ncoll", (a[0], a[1], a[2])),
                ("neq", (x, a[0])),
                ("neq", (a[1], a[2])),
            ]
        elif k == "rotate":
            facts = [
                ("cong", (a[1], a[0], a[1], x)),
                ("ncoll", (x, a[0], a[1])),
                ("neq", (x, a[0])),
                ("neq", (a[1], a[0])),
                ("neq", (a[1], x)),
            ]
        elif k == "parallel_intersect":
            facts = [
                ("para", (a[0], x, a[1], a[2])),
                ("para", (a[3], x, a[4], a[5])),
                ("neq", (x, a[0])),
                ("neq", (x, a[3])),
                ("neq", (a[1], a[2])),
                ("neq", (a[4], a[5])),
            ]
        else:  # pragma: no cover - guarded at parse time
            raise ValueError(f"unknown constructor {k!r}")
        return tuple(canonicalize(Fact(p, t)) for p, t in facts)


@dataclass(frozen=True)
class Rule:
    """A Horn clause over fact patterns with distinctness side conditions.

    Variables are small integers; ``var_names`` maps them back to source
    names.  Every conclusion and side-condition variable occurs in some
    premise (range restriction), which forward chaining requires.
    """

    name: str
    var_names: tuple[str, ...]
    premises: tuple[tuple[str, tuple[int, ...]], ...]
    side_conditions: tuple[tuple[int, int], ...]
    conclusion: tuple[str, tuple[int, ...]]


@dataclass(frozen=True)
class SymmetryDecl:
    name: str
    pred: str
    permutation: tuple[int, ...]


@dataclass
class RuleSet:
    rules: list[Rule] = field(default_factory=list)
    symmetries: list[SymmetryDecl] = field(default_factory=list)
    templates: dict[str, str] = field(default_factory=dict)

    def __eq__(self, other):
        return (
            isinstance(other, RuleSet)
            and self.rules == other.rules
            and self.symmetries == other.symmetries
            and self.templates == other.templates
        )


@dataclass
class Problem:
    name: str
    points: list[str]
    constructors: list[Optional[Constructor]]
    hypotheses: list[Fact]
    extra_hypotheses: list[Fact]
    goal: Fact
    includes: list[str]
    fmt: str  # "fof" | "construct"

    def point_index(self, name: str) -> int:
        return self.points.index(name)

    def fact_str(self, fact: Fact) -> str:
        return f"{fact.pred}({','.join(self.points[i] for i in fact.args)})"

    def is_constructive(self) -> bool:
        return self.fmt == "construct" and all(c is not None for c in self.constructors)

    def free_point_indices(self) -> list[int]:
        return [
            i
            for i, c in enumerate(self.constructors)
            if c is not None and c.kind == "free"
        ]

    def __eq__(self, other):
        return isinstance(other, Problem) and (
            self.name,
            self.points,
            self.constructors,
            self.hypotheses,
            self.extra_hypotheses,
            self.goal,
            self.includes,
            self.fmt,
        ) == (
            other.name,
            other.points,
            other.constructors,
            other.hypotheses,
            other.extra_hypotheses,
            other.goal,
            other.includes,
            other.fmt,
        )


# ---------------------------------------------------------------------------
# first-order tokenizer / recursive-descent parser


class _Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Token({self.text!r}@{self.line}:{self.col})"


_PUNCT = ("=>", "!=", "(", ")", "[", "]", ",", ":", ".", "&", "!")


def _tokenize_fof(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "'":
            j = i + 1
            while j < n and text[j] != "'":
                if text[j] == "\n":
                    raise ParseError("unterminated quoted name", line, col, "'")
                j += 1
            if j >= n:
                raise ParseError("unterminated quoted name", line, col, "'")
            tokens.append(_Token("quoted", text[i + 1 : j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        matched = False
        for p in _PUNCT:
            if text.startswith(p, i):
                tokens.append(_Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                matched = True
                break
        if matched:
            continue
        if ch.isalnum() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError("unexpected character", line, col, ch)
    return tokens


class _FofAtom:
    __slots__ = ("pred", "args", "token")

    def __init__(self, pred, args, token):
        self.pred = pred
        self.args = args  # tuple of symbol names
        self.token = token


class _FofFormula:
    """Flattened formula: quantified vars, antecedent atoms/disequalities, consequent."""

    def __init__(self):
        self.vars: list[str] = []
        self.antecedent: list[_FofAtom] = []
        self.disequalities: list[tuple[str, str, _Token]] = []
        self.consequent: Optional[_FofAtom] = None


class _FofParser:
    def __init__(self, text: str):
        self.tokens = _tokenize_fof(text)
        self.pos = 0

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _err(self, message, token=None):
        tok = token or self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError(
                f"{message} (unexpected end of input)",
                last.line if last else 1,
                last.col if last else 1,
                last.text if last else "",
            )
        raise ParseError(message, tok.line, tok.col, tok.text)

    def _take(self, text=None, kind=None) -> _Token:
        tok = self._peek()
        if tok is None:
            self._err(f"expected {text or kind}")
        if text is not None and tok.text != text:
            self._err(f"expected {text!r}")
        if kind is not None and tok.kind != kind:
            self._err(f"expected {kind}")
        self.pos += 1
        return tok

    def _at(self, text) -> bool:
        tok = self._peek()
        return tok is not None and tok.text == text

    def statements(self):
        """Yield ('include', name) and ('fof', name, role, formula) entries."""
        out = []
        while self._peek() is not None:
            tok = self._peek()
            if tok.text == "include":
                self._take("include")
                self._take("(")
                name = self._take(kind="quoted").text
                self._take(")")
                self._take(".")
                out.append(("include", name, tok))
            elif tok.text == "fof":
                self._take("fof")
                self._take("(")
                name = self._take(kind="name").text
                self._take(",")
                role = self._take(kind="name").text
                self._take(",")
                formula = _FofFormula()
                self._formula(formula, top=True)
                self._take(")")
                self._take(".")
                out.append(("fof", name, role, formula, tok))
            elif tok.text == "template":
                self._take("template")
                self._take("(")
                name = self._take(kind="name").text
                self._take(",")
                value = self._take(kind="quoted").text
                self._take(")")
                self._take(".")
                out.append(("template", name, value, tok))
            else:
                self._err("expected fof, include, or template statement")
        return out

    # The published listings scope quantifiers loosely (sometimes over only
    # the antecedent), so the formula is flattened rather than kept as a
    # tree: quantified variables, antecedent conjuncts, and one consequent.
    def _formula(self, acc: _FofFormula, top=False):
        self._conjunct(acc)
        while self._at("&"):
            self._take("&")
            self._conjunct(acc)
        if self._at("=>"):
            tok = self._take("=>")
            if acc.consequent is not None:
                self._err("more than one implication consequent", tok)
            for atom in self._collect_consequent():
                if acc.consequent is not None:
                    self._err("conclusion must be a single atom", atom.token)
                acc.consequent = atom

    def _collect_consequent(self):
        sub = _FofFormula()
        sub.vars = []
        self._conjunct(sub)
        while self._at("&"):
            self._take("&")
            self._conjunct(sub)
        if self._at("=>"):
            self._err("nested implication in consequent")
        if sub.disequalities:
            line = sub.disequalities[0][2]
            raise ParseError(
                "disequality not allowed as a conclusion", line.line, line.col, "!="
            )
        return sub.antecedent

    def _conjunct(self, acc: _FofFormula):
        tok = self._peek()
        if tok is None:
            self._err("expected a formula")
        if tok.text == "(":
            self._take("(")
            self._formula(acc)
            self._take(")")
            return
        if tok.text == "!":
            self._take("!")
            self._take("[")
            while True:
                acc.vars.append(self._take(kind="name").text)
                if self._at("]"):
                    break
                self._take(",")
            self._take("]")
            self._take(":")
            self._conjunct(acc)
            return
        if tok.kind == "name":
            first = self._take(kind="name")
            nxt = self._peek()
            if nxt is not None and nxt.text == "!=":
                self._take("!=")
                other = self._take(kind="name")
                acc.disequalities.append((first.text, other.text, first))
                return
            if nxt is not None and nxt.text == "(":
                self._take("(")
                args = []
                while True:
                    args.append(self._take(kind="name").text)
                    if self._at(")"):
                        break
                    self._take(",")
                self._take(")")
                acc.antecedent.append(_FofAtom(first.text, tuple(args), first))
                return
            self._err("expected '(' or '!=' after name", first)
        self._err("expected an atom, quantifier, or '('")


def _check_atom(atom: _FofAtom):
    if atom.pred not in PREDICATES:
        raise ParseError(
            f"unknown predicate {atom.pred!r}", atom.token.line, atom.token.col, atom.pred
        )
    want = arity(atom.pred)
    if len(atom.args) != want:
        raise ParseError(
            f"{atom.pred}/{want} expects {want} points, got {len(atom.args)}",
            atom.token.line,
            atom.token.col,
            atom.pred,
        )


def _parse_fof_problem(text: str, name_hint: str) -> Problem:
    parser = _FofParser(text)
    includes: list[str] = []
    points: list[str] = []
    index: dict[str, int] = {}

    def point(sym: str) -> int:
        if sym not in index:
            index[sym] = len(points)
            points.append(sym)
        return index[sym]

    hypotheses: list[Fact] = []
    goal: Optional[Fact] = None
    prob_name = name_hint
    for stmt in parser.statements():
        if stmt[0] == "include":
            includes.append(stmt[1])
            continue
        if stmt[0] == "template":
            tok = stmt[3]
            raise ParseError("template entries belong in rule files", tok.line, tok.col, "template")
        _, fname, role, formula, tok = stmt
        if role == "conjecture":
            if goal is not None:
                raise ParseError("more than one conjecture", tok.line, tok.col, fname)
            prob_name = fname
            for v in formula.vars:
                point(v)
            for atom in formula.antecedent:
                _check_atom(atom)
                hypotheses.append(
                    canonicalize(Fact(atom.pred, tuple(point(s) for s in atom.args)))
                )
            for a, b, dtok in formula.disequalities:
                hypotheses.append(canonicalize(Fact("neq", (point(a), point(b)))))
            if formula.consequent is None:
                # conjecture with no implication: the lone atom is the goal
                if not hypotheses:
                    raise ParseError("conjecture has no atoms", tok.line, tok.col, fname)
                goal = hypotheses.pop()
            else:
                _check_atom(formula.consequent)
                goal = canonicalize(
                    Fact(
                        formula.consequent.pred,
                        tuple(point(s) for s in formula.consequent.args),
                    )
                )
        elif role == "axiom":
            if formula.consequent is not None or formula.vars:
                raise ParseError(
                    "quantified or implicational axioms belong in rule files",
                    tok.line,
                    tok.col,
                    fname,
                )
            for atom in formula.antecedent:
                _check_atom(atom)
                hypotheses.append(
                    canonicalize(Fact(atom.pred, tuple(point(s) for s in atom.args)))
                )
            for a, b, dtok in formula.disequalities:
                hypotheses.append(canonicalize(Fact("neq", (point(a), point(b)))))
        else:
            raise ParseError(f"unsupported role {role!r}", tok.line, tok.col, role)
    if goal is None:
        raise ParseError("no conjecture found", 1, 1, "")
    return Problem(
        name=prob_name,
        points=points,
        constructors=[None] * len(points),
        hypotheses=hypotheses,
        extra_hypotheses=list(hypotheses),
        goal=goal,
        includes=includes,
        fmt="fof",
    )


# ---------------------------------------------------------------------------
# constructive format


def _split_construct_atom(body: str, line_no: int, col0: int):
    body = body.strip()
    open_p = body.find("(")
    if open_p < 0 or not body.endswith(")"):
        raise ParseError("expected predicate(args)", line_no, col0, body or "?")
    pred = body[:open_p].strip()
    args = [a.strip() for a in body[open_p + 1 : -1].split(",")]
    if any(not a for a in args):
        raise ParseError("empty argument", line_no, col0, body)
    return pred, args


def _parse_construct_problem(text: str, name_hint: str) -> Problem:
    name = name_hint
    points: list[str] = []
    index: dict[str, int] = {}
    constructors: list[Optional[Constructor]] = []
    hypotheses: list[Fact] = []
    extra: list[Fact] = []
    includes: list[str] = []
    goal: Optional[Fact] = None

    def known(sym: str, line_no: int, col: int) -> int:
        if sym not in index:
            raise ParseError(f"undeclared point {sym!r}", line_no, col, sym)
        return index[sym]

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col0 = raw.index(stripped[0]) + 1
        words = stripped.split(None, 1)
        head = words[0]
        rest = words[1] if len(words) > 1 else ""
        if head == "problem":
            if not rest:
                raise ParseError("problem line needs a name", line_no, col0, head)
            name = rest.strip()
        elif head == "include":
            if not rest:
                raise ParseError("include line needs a file name", line_no, col0, head)
            includes.append(rest.strip().strip("'\""))
        elif head == "point":
            if "=" not in rest:
                raise ParseError("expected 'point NAME = constructor'", line_no, col0, rest)
            pname, ctor_text = (part.strip() for part in rest.split("=", 1))
            if not pname.isidentifier():
                raise ParseError(f"bad point name {pname!r}", line_no, col0, pname)
            if pname in index:
                raise ParseError(f"point {pname!r} redeclared", line_no, col0, pname)
            if ctor_text == "free":
                ctor = Constructor("free", ())
            else:
                kind, args = _split_construct_atom(ctor_text, line_no, col0)
                if kind not in CONSTRUCTORS:
                    raise ParseError(f"unknown constructor {kind!r}", line_no, col0, kind)
                want = CONSTRUCTORS[kind]
                if len(args) != want:
                    raise ParseError(
                        f"{kind} expects {want} points, got {len(args)}",
                        line_no,
                        col0,
                        kind,
                    )
                ctor = Constructor(kind, tuple(known(a, line_no, col0) for a in args))
            idx = len(points)
            index[pname] = idx
            points.append(pname)
            constructors.append(ctor)
            for fact in ctor.emitted_facts(idx):
                if fact not in hypotheses:
                    hypotheses.append(fact)
        elif head in ("hypothesis", "goal"):
            pred, args = _split_construct_atom(rest, line_no, col0)
            if pred not in PREDICATES:
                raise ParseError(f"unknown predicate {pred!r}", line_no, col0, pred)
            if len(args) != arity(pred):
                raise ParseError(
                    f"{pred}/{arity(pred)} expects {arity(pred)} points, got {len(args)}",
                    line_no,
                    col0,
                    pred,
                )
            fact = canonicalize(
                Fact(pred, tuple(known(a, line_no, col0) for a in args))
            )
            if head == "hypothesis":
                if fact not in hypotheses:
                    hypotheses.append(fact)
                extra.append(fact)
            else:
                if goal is not None:
                    raise ParseError("more than one goal", line_no, col0, "goal")
                goal = fact
        else:
            raise ParseError(f"unknown directive {head!r}", line_no, col0, head)
    if goal is None:
        raise ParseError("no goal line", 1, 1, "")
    return Problem(
        name=name,
        points=points,
        constructors=constructors,
        hypotheses=hypotheses,
        extra_hypotheses=extra,
        goal=goal,
        includes=includes,
        fmt="construct",
    )


def parse_problem(text: str, fmt: str, name_hint: str = "unnamed") -> Problem:
    if fmt == "fof":
        return _parse_fof_problem(text, name_hint)
    if fmt == "construct":
        return _parse_construct_problem(text, name_hint)
    raise ValueError(f"unknown problem format {fmt!r}")


# ---------------------------------------------------------------------------
# rule files


def _compile_rule(name, formula: _FofFormula, tok) -> Rule:
    var_ids: dict[str, int] = {}
    var_names: list[str] = []

    def var(sym: str) -> int:
        if sym not in var_ids:
            var_ids[sym] = len(var_names)
            var_names.append(sym)
        return var_ids[sym]

    premises = []
    for atom in formula.antecedent:
        _check_atom(atom)
        premises.append((atom.pred, tuple(var(s) for s in atom.args)))
    if formula.consequent is None:
        raise ParseError(f"rule {name!r} has no conclusion", tok.line, tok.col, name)
    _check_atom(formula.consequent)
    bound = {v for _, args in premises for v in args}
    side = []
    for a, b, dtok in formula.disequalities:
        for sym in (a, b):
            if sym not in var_ids or var_ids[sym] not in bound:
                raise ParseError(
                    f"side-condition variable {sym!r} is not bound by any premise",
                    dtok.line,
                    dtok.col,
                    sym,
                )
        side.append((var_ids[a], var_ids[b]))
    concl_vars = []
    for sym in formula.consequent.args:
        if sym not in var_ids or var_ids[sym] not in bound:
            raise ParseError(
                f"conclusion variable {sym!r} is not bound by any premise",
                formula.consequent.token.line,
                formula.consequent.token.col,
                sym,
            )
        concl_vars.append(var_ids[sym])
    return Rule(
        name=name,
        var_names=tuple(var_names),
        premises=tuple(premises),
        side_conditions=tuple(side),
        conclusion=(formula.consequent.pred, tuple(concl_vars)),
    )


def _as_symmetry(rule: Rule) -> Optional[SymmetryDecl]:
    """Detect a single-premise same-predicate argument permutation."""
    if len(rule.premises) != 1 or rule.side_conditions:
        return None
    (pred, pargs) = rule.premises[0]
    cpred, cargs = rule.conclusion
    if pred != cpred or len(set(pargs)) != len(pargs):
        return None
    if sorted(pargs) != sorted(cargs):
        return None
    position = {v: i for i, v in enumerate(pargs)}
    perm = tuple(position[v] for v in cargs)
    return SymmetryDecl(rule.name, pred, perm)


def parse_rules(text: str) -> RuleSet:
    parser = _FofParser(text)
    rs = RuleSet()
    names = set()
    for stmt in parser.statements():
        if stmt[0] == "include":
            tok = stmt[2]
            raise ParseError("rule files cannot include other files", tok.line, tok.col, "include")
        if stmt[0] == "template":
            _, tname, value, tok = stmt
            if tname in rs.templates:
                raise ParseError(f"duplicate template for {tname!r}", tok.line, tok.col, tname)
            rs.templates[tname] = value
            continue
        _, name, role, formula, tok = stmt
        if role != "axiom":
            raise ParseError(
                f"rule files may only contain axioms, got role {role!r}",
                tok.line,
                tok.col,
                role,
            )
        if name in names:
            raise ParseError(f"duplicate rule name {name!r}", tok.line, tok.col, name)
        names.add(name)
        rule = _compile_rule(name, formula, tok)
        sym = _as_symmetry(rule)
        if sym is not None:
            if sym.permutation not in symmetry_group(sym.pred):
                raise ParseError(
                    f"{name!r} declares a permutation outside the {sym.pred} symmetry group",
                    tok.line,
                    tok.col,
                    name,
                )
            rs.symmetries.append(sym)
        else:
            rs.rules.append(rule)
    unknown = set(rs.templates) - names
    if unknown:
        raise ParseError(f"templates for unknown rules: {sorted(unknown)}", 1, 1, "template")
    return rs


# ---------------------------------------------------------------------------
# rendering


def _render_fof_problem(p: Problem) -> str:
    lines = [f"include('{inc}')." for inc in p.includes]
    if lines:
        lines.append("")
    vars_txt = ",".join(p.points)
    hyp_parts = []
    for fact in p.hypotheses:
        if fact.pred == "neq":
            hyp_parts.append(f"{p.points[fact.args[0]]} != {p.points[fact.args[1]]}")
        else:
            hyp_parts.append(p.fact_str(fact))
    goal_txt = p.fact_str(p.goal)
    if hyp_parts:
        body = f"( {' & '.join(hyp_parts)} )\n   =>\n   ( {goal_txt} )"
    else:
        body = f"( {goal_txt} )"
    lines.append(f"fof({p.name},conjecture,( ! [{vars_txt}] :\n   {body} ) ).")
    return "\n".join(lines) + "\n"


def _render_construct_problem(p: Problem) -> str:
    lines = [f"problem {p.name}"]
    for inc in p.includes:
        lines.append(f"include {inc}")
    for name, ctor in zip(p.points, p.constructors):
        if ctor is None or ctor.kind == "free":
            lines.append(f"point {name} = free")
        else:
            args = ", ".join(p.points[i] for i in ctor.args)
            lines.append(f"point {name} = {ctor.kind}({args})")
    for fact in p.extra_hypotheses:
        lines.append(f"hypothesis {p.fact_str(fact)}")
    lines.append(f"goal {p.fact_str(p.goal)}")
    return "\n".join(lines) + "\n"


def render_problem(p: Problem) -> str:
    """Pretty-print in the format the problem was parsed from.

    Round-trips: ``parse_problem(render_problem(p), p.fmt)`` is structurally
    equal to ``p``.
    """
    if p.fmt == "fof":
        return _render_fof_problem(p)
    return _render_construct_problem(p)


def render_rules(rs: RuleSet) -> str:
    lines = ["% symmetry declarations (absorbed into canonical forms)"]
    for sym in rs.symmetries:
        n = len(sym.permutation)
        src = [chr(ord("A") + i) for i in range(n)]
        dst = [src[i] for i in sym.permutation]
        lines.append(
            f"fof({sym.name},axiom,( ! [{','.join(src)}] : "
            f"({sym.pred}({','.join(src)}) => {sym.pred}({','.join(dst)}))))."
        )
    lines.append("")
    lines.append("% engine rules")
    for rule in rs.rules:
        parts = []
        for pred, args in rule.premises:
            parts.append(f"{pred}({','.join(rule.var_names[v] for v in args)})")
        for a, b in rule.side_conditions:
            parts.append(f"{rule.var_names[a]} != {rule.var_names[b]}")
        cpred, cargs = rule.conclusion
        concl = f"{cpred}({','.join(rule.var_names[v] for v in cargs)})"
        lines.append(
            f"fof({rule.name},axiom,( ! [{','.join(rule.var_names)}] : "
            f"(({' & '.join(parts)}) => {concl})))."
        )
        if rule.name in rs.templates:
            lines.append(f"template({rule.name},'{rs.templates[rule.name]}').")
    return "\n".join(lines) + "\n"


def detect_format(path: str) -> str:
    if path.endswith(".gdd"):
        return "construct"
    if path.endswith(".p"):
        return "fof"
    raise ValueError(f"cannot infer problem format from {path!r}")
