"""Canonical forms: idempotence, orbit invariance, and the symmetry groups
themselves validated against the exact numeric semantics."""

import itertools
import random
from fractions import Fraction

import pytest

from gddp import Fact, MalformedFactError, canonicalize, eval_fact, make_fact
from gddp.facts import PREDICATES, arity, orbit_instances, symmetry_group
from gddp.numeric import NumericModel

A, B, C, D, E, F, G, H = range(8)


def test_examples_from_contract():
    # index order A < B < C < D
    assert canonicalize(Fact("para", (C, D, A, B))) == Fact("para", (A, B, C, D))
    assert canonicalize(Fact("coll", (A, C, B))) == Fact("coll", (A, B, C))
    # the first argument of midp is the midpoint and never permutes
    assert canonicalize(Fact("midp", (E, B, A))) == Fact("midp", (E, A, B))
    assert canonicalize(Fact("midp", (E, A, B))) == Fact("midp", (E, A, B))


def test_arity_mismatch_rejected():
    with pytest.raises(MalformedFactError):
        canonicalize(Fact("midp", (E, A)))
    with pytest.raises(MalformedFactError):
        canonicalize(Fact("para", (A, B, C)))
    with pytest.raises(MalformedFactError):
        canonicalize(Fact("between", (A, B, C)))


@pytest.mark.parametrize("pred", sorted(PREDICATES))
def test_idempotence_and_orbit_invariance(pred):
    rng = random.Random(7)
    n = arity(pred)
    group = symmetry_group(pred)
    for _ in range(40):
        args = tuple(rng.randrange(6) for _ in range(n))
        canon = canonicalize(Fact(pred, args))
        assert canonicalize(canon) == canon
        # independently enumerate the orbit and take the minimum
        orbit = {tuple(args[i] for i in perm) for perm in group}
        assert canon.args == min(orbit)
        for inst in orbit:
            assert canonicalize(Fact(pred, inst)) == canon


def test_orbit_instances_cover_group():
    f = Fact("para", (A, B, C, D))
    insts = set(orbit_instances(f))
    expected = {tuple((A, B, C, D)[i] for i in p) for p in symmetry_group("para")}
    assert insts == expected
    assert len(insts) == 8


def test_group_sizes():
    sizes = {pred: len(symmetry_group(pred)) for pred in PREDICATES}
    assert sizes["coll"] == 6
    assert sizes["ncoll"] == 6
    assert sizes["para"] == sizes["perp"] == sizes["cong"] == 8
    assert sizes["midp"] == 2
    assert sizes["neq"] == 2
    assert sizes["eqangle"] == sizes["eqratio"] == 128
    assert sizes["simtri"] == 12
    assert sizes["cyclic"] == 24


def _random_model(rng, n=8):
    coords = {
        i: (Fraction(rng.randint(-60, 60), rng.randint(1, 7)),
            Fraction(rng.randint(-60, 60), rng.randint(1, 7)))
        for i in range(n)
    }
    return NumericModel(coords=coords, seed=0)


@pytest.mark.parametrize("pred", sorted(PREDICATES))
def test_group_is_truth_preserving(pred):
    """Every declared permutation preserves exact numeric truth."""
    rng = random.Random(11)
    n = arity(pred)
    for _ in range(30):
        model = _random_model(rng)
        args = tuple(rng.randrange(8) for _ in range(n))
        value = eval_fact(model, Fact(pred, args))
        for perm in symmetry_group(pred):
            permuted = Fact(pred, tuple(args[i] for i in perm))
            assert eval_fact(model, permuted) == value


def _rot90(v):
    return (-v[1], v[0])


def _add(p, v):
    return (p[0] + v[0], p[1] + v[1])


def _rq(rng):
    return Fraction(rng.randint(-40, 40), rng.randint(1, 5))


def _true_instance(pred, rng):
    """A model and argument tuple making the predicate true (generic data)."""

    def pt():
        return (_rq(rng), _rq(rng))

    if pred == "coll":
        a, b = pt(), pt()
        t = _rq(rng)
        c = _add(a, (t * (b[0] - a[0]), t * (b[1] - a[1])))
        pts = [a, b, c]
    elif pred == "midp":
        a, b = pt(), pt()
        m = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        pts = [m, a, b]
    elif pred == "para":
        a, b, c = pt(), pt(), pt()
        t = _rq(rng) or Fraction(1)
        d = _add(c, (t * (b[0] - a[0]), t * (b[1] - a[1])))
        pts = [a, b, c, d]
    elif pred == "perp":
        a, b, c = pt(), pt(), pt()
        d = _add(c, _rot90((b[0] - a[0], b[1] - a[1])))
        pts = [a, b, c, d]
    elif pred == "cong":
        a, b, c = pt(), pt(), pt()
        d = _add(c, _rot90((b[0] - a[0], b[1] - a[1])))
        pts = [a, b, c, d]
    elif pred == "cyclic":
        center, r = pt(), abs(_rq(rng)) + 1
        pts = []
        for _ in range(4):
            t = _rq(rng)
            den = 1 + t * t
            pts.append(_add(center, (r * (1 - t * t) / den, r * 2 * t / den)))
    elif pred == "neq":
        a = pt()
        pts = [a, _add(a, (Fraction(1), Fraction(0)))]
    elif pred == "simtri":
        a, b, c, p = pt(), pt(), pt(), pt()
        s, t = _rq(rng), _rq(rng) or Fraction(1)

        def smul(v):
            return (s * v[0] - t * v[1], s * v[1] + t * v[0])

        pts = [a, b, c, p,
               _add(p, smul((b[0] - a[0], b[1] - a[1]))),
               _add(p, smul((c[0] - a[0], c[1] - a[1])))]
    else:
        raise AssertionError(pred)
    model = NumericModel(coords=dict(enumerate(pts)), seed=0)
    return model, tuple(range(len(pts)))


@pytest.mark.parametrize(
    "pred", ["coll", "para", "perp", "cong", "midp", "neq", "cyclic", "simtri"]
)
def test_group_is_exactly_the_truth_preserving_set(pred):
    """A permutation preserves truth on both satisfying and generic data
    iff it is in the declared group (brute force over S_n).  Satisfying
    instances matter: on all-false samples every permutation looks
    truth-preserving."""
    rng = random.Random(13)
    n = arity(pred)
    group = set(symmetry_group(pred))
    samples = []
    for _ in range(25):
        model, args = _true_instance(pred, rng)
        assert eval_fact(model, Fact(pred, args)), pred
        samples.append((model, args))
    for _ in range(25):
        samples.append(
            (_random_model(rng), tuple(rng.randrange(8) for _ in range(n)))
        )
    for perm in itertools.permutations(range(n)):
        preserves = all(
            eval_fact(m, Fact(pred, tuple(a[i] for i in perm)))
            == eval_fact(m, Fact(pred, a))
            for m, a in zip([s[0] for s in samples], [s[1] for s in samples])
        )
        assert preserves == (perm in group), (pred, perm)


def test_make_fact_builds_canonical():
    assert make_fact("neq", 5, 2) == Fact("neq", (2, 5))
    assert make_fact("cyclic", 3, 1, 2, 0) == Fact("cyclic", (0, 1, 2, 3))
