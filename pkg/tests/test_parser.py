"""Both input languages: exact published listings, round trips, located errors."""

import random
import re

import pytest

from gddp import Fact, ParseError, parse_problem, parse_rules, render_problem, render_rules
from conftest import CORPUS_ALL, RULES_FILE, corpus_path

# The five collinearity/parallel rules in their published first-order form.
TABLE1 = """fof(ruleD1,axiom,( ! [A,B,C] : (coll(A,B,C) => coll(A,C,B)))).
fof(ruleD2,axiom,( ! [A,B,C] : (coll(A,B,C) => coll(B,A,C)))).
fof(ruleD3,axiom,( ! [A,B,C,D] :
                     ((A!=B & coll(A,B,C) & coll(A,B,D)) => coll(C,D,A)))).
fof(ruleD4,axiom,( ! [A,B,C,D] : (para(A,B,C,D) => para(A,B,D,C)))).
fof(ruleD5,axiom,( ! [A,B,C,D] : (para(A,B,C,D) => para(C,D,A,B)))).
"""

# The quadrilateral conjecture in its published first-order form, including
# the loose quantifier scoping and spacing.
QUAD_FOF = """include('geometryDeductiveDatabaseMethod.ax').

fof(tgtpproblema1,conjecture,( ! [ A,B,C,D] :
   ( midp(E,A,B) &  midp(F,B,C) & midp(G,C,D) & midp(H,D,A) )
   =>
   ( para(E,F,G,H) ) ) ).
"""

RULE63_TEXT = (
    "fof(ruleD63,axiom,( ! [A,B,C,D,M] : "
    "((midp(M,A,B) & midp(M,C,D)) => para(A,C,B,D))))."
)


def test_table1_partitions_into_symmetries_and_one_engine_rule():
    rs = parse_rules(TABLE1)
    assert [s.name for s in rs.symmetries] == ["ruleD1", "ruleD2", "ruleD4", "ruleD5"]
    assert [r.name for r in rs.rules] == ["ruleD3"]
    d3 = rs.rules[0]
    assert len(d3.premises) == 2
    assert len(d3.side_conditions) == 1
    assert d3.conclusion[0] == "coll"


def test_quadrilateral_fof_parses_byte_exactly():
    p = parse_problem(QUAD_FOF, "fof")
    assert p.points == ["A", "B", "C", "D", "E", "F", "G", "H"]
    assert len(p.hypotheses) == 4
    assert all(h.pred == "midp" for h in p.hypotheses)
    assert p.goal == Fact("para", (4, 5, 6, 7))
    assert p.includes == ["geometryDeductiveDatabaseMethod.ax"]


def test_rule63_text_compiles_to_engine_rule():
    rs = parse_rules(RULE63_TEXT)
    assert not rs.symmetries
    (rule,) = rs.rules
    assert len(rule.premises) == 2
    assert len(rule.var_names) == 5
    assert rule.conclusion[0] == "para"


def test_arity_error_names_the_predicate():
    with pytest.raises(ParseError, match=r"midp/3"):
        parse_problem("fof(x,conjecture, midp(E,A) ).", "fof")


def test_range_restriction_violation_names_the_variable():
    bad = "fof(bad,axiom,( ! [A,B,C,X] : (coll(A,B,C) => coll(A,B,X))))."
    with pytest.raises(ParseError, match=r"'X'"):
        parse_rules(bad)


def test_unbound_side_condition_rejected():
    bad = "fof(bad,axiom,( ! [A,B,C,X] : ((coll(A,B,C) & X != A) => coll(A,C,B))))."
    with pytest.raises(ParseError, match=r"'X'"):
        parse_rules(bad)


def test_duplicate_rule_name_rejected():
    text = TABLE1 + "fof(ruleD3,axiom,( ! [A,B,C] : (coll(A,B,C) => coll(C,B,A))))."
    with pytest.raises(ParseError, match="duplicate"):
        parse_rules(text)


def test_bogus_symmetry_declaration_rejected():
    # midp's first argument is the midpoint; moving it is not truth-preserving
    bad = "fof(bad,axiom,( ! [M,A,B] : (midp(M,A,B) => midp(A,M,B))))."
    with pytest.raises(ParseError, match="symmetry"):
        parse_rules(bad)


def test_conjecture_not_allowed_in_rule_file():
    with pytest.raises(ParseError, match="axiom"):
        parse_rules("fof(x,conjecture,( ! [A,B] : (neq(A,B) => neq(B,A)))).")


def test_construct_undeclared_point():
    text = "point E = midpoint(A, B)\ngoal coll(E,A,B)\n"
    with pytest.raises(ParseError, match="undeclared"):
        parse_problem(text, "construct")


def test_construct_redeclared_point():
    text = "point A = free\npoint A = free\ngoal neq(A,A)\n"
    with pytest.raises(ParseError, match="redeclared"):
        parse_problem(text, "construct")


def test_construct_unknown_constructor():
    text = "point A = free\npoint B = reflect(A, A)\ngoal neq(A,B)\n"
    with pytest.raises(ParseError, match="constructor"):
        parse_problem(text, "construct")


def test_construct_missing_goal():
    with pytest.raises(ParseError, match="goal"):
        parse_problem("point A = free\n", "construct")


def test_midpoint_emits_midp_and_coll():
    text = (
        "point A = free\npoint B = free\npoint E = midpoint(A, B)\n"
        "goal midp(E,A,B)\n"
    )
    p = parse_problem(text, "construct")
    preds = sorted(h.pred for h in p.hypotheses)
    assert preds == ["coll", "midp"]
    assert p.extra_hypotheses == []


@pytest.mark.parametrize("name", CORPUS_ALL)
def test_round_trip_bundled_problems(name):
    fmt = "construct" if name.endswith(".gdd") else "fof"
    text = corpus_path(name).read_text()
    once = parse_problem(text, fmt, name_hint=name)
    again = parse_problem(render_problem(once), fmt, name_hint=name)
    assert once == again


def test_round_trip_bundled_rules():
    rs = parse_rules(RULES_FILE.read_text())
    assert parse_rules(render_rules(rs)) == rs
    assert len(rs.rules) >= 20
    assert rs.templates  # every engine rule documents itself
    assert set(rs.templates) == {r.name for r in rs.rules}


def test_round_trip_table1_and_quadrilateral():
    assert parse_rules(render_rules(parse_rules(TABLE1))) == parse_rules(TABLE1)
    p = parse_problem(QUAD_FOF, "fof")
    assert parse_problem(render_problem(p), "fof") == p


def test_empty_hypotheses_renders_conjecture_only():
    text = "fof(triv,conjecture,( ! [A,B,C,D] : ( para(A,B,C,D) ) ))."
    p = parse_problem(text, "fof")
    assert p.hypotheses == []
    rendered = render_problem(p)
    assert "=>" not in rendered
    assert parse_problem(rendered, "fof") == p


def _corrupt_one_token(text: str, rng: random.Random) -> tuple[str, int]:
    """Break one token; returns the new text and the corruption offset."""
    if rng.random() < 0.5:
        spans = [m.span() for m in re.finditer(r"[A-Za-z_][A-Za-z0-9_]*", text)]
        start, end = rng.choice(spans)
        return text[:start] + "?" + text[end:], start
    spans = [m.span() for m in re.finditer(r"[(),.\[\]]", text)]
    start, end = rng.choice(spans)
    return text[:start] + text[end:], start


def _offset_of(text: str, line: int, col: int) -> int:
    lines = text.splitlines(keepends=True)
    return sum(len(l) for l in lines[: line - 1]) + (col - 1)


# no quoted strings in these: corruption inside a quote is legal text
FUZZ_PROBLEM = QUAD_FOF.split("\n\n", 1)[1]
FUZZ_RULES = TABLE1


@pytest.mark.parametrize("seed", range(60))
def test_fof_errors_are_located_at_or_after_the_corruption(seed):
    """When a single-token corruption raises, the reported location points
    at the offending token (a few characters of slack for deletions that
    merge the corruption into the preceding token).  Some deletions are
    semantically survivable and parse cleanly; those are skipped."""
    rng = random.Random(seed)
    if seed % 2:
        corpus, parse = FUZZ_PROBLEM, lambda t: parse_problem(t, "fof")
    else:
        corpus, parse = FUZZ_RULES, parse_rules
    corrupted, where = _corrupt_one_token(corpus, rng)
    try:
        parse(corrupted)
    except ParseError as err:
        assert err.line is not None and err.column is not None
        offset = _offset_of(corrupted, err.line, err.column)
        assert where - 16 <= offset <= len(corrupted)
