"""Exact-rational realization of constructions and tolerance-free fact checking.

Every predicate has an exact semantics over rational coordinates, so a
fact is either true or false in a model; no epsilon appears anywhere.
Random draws use small rationals (numerators in [-100, 100], denominators
in [1, 10]) to keep Fraction arithmetic cheap while avoiding accidental
degeneracies; draws that violate a constructor's guarantees are rejected
and the whole model is redrawn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import RealizationError, UnsupportedFormatError
from .facts import Fact
from .parser import Problem

Coord = tuple[Fraction, Fraction]

_MAX_ATTEMPTS = 100


@dataclass(frozen=True)
class NumericModel:
    coords: dict[int, Coord]
    seed: int

    def __getitem__(self, point: int) -> Coord:
        return self.coords[point]


@dataclass(frozen=True)
class CheckReport:
    models_tried: int
    models_valid: int
    goal_holds: int
    verdict: str  # supported | refuted | inconclusive

    MIN_VALID = 20


def _rand_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-100, 100), rng.randint(1, 10))


def _rand_point(rng: random.Random) -> Coord:
    return (_rand_rational(rng), _rand_rational(rng))


def _sub(a: Coord, b: Coord) -> Coord:
    return (a[0] - b[0], a[1] - b[1])


def _cross(u: Coord, v: Coord) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u: Coord, v: Coord) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def _dist2(a: Coord, b: Coord) -> Fraction:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


class _Degenerate(Exception):
    pass


def _build_point(ctor, coords: dict[int, Coord], rng: random.Random) -> Coord:
    k = ctor.kind
    a = ctor.args
    if k == "free":
        return _rand_point(rng)
    if k == "midpoint":
        p, q = coords[a[0]], coords[a[1]]
        if p == q:
            raise _Degenerate("midpoint of coincident points")
        return ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
    if k == "on_line":
        p, q = coords[a[0]], coords[a[1]]
        if p == q:
            raise _Degenerate("on_line through coincident points")
        t = _rand_rational(rng)
        if t == 0 or t == 1:
            raise _Degenerate("on_line parameter hit an endpoint")
        return (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
    if k == "intersect":
        p, q, r, s = (coords[i] for i in a)
        if p == q or r == s:
            raise _Degenerate("intersect needs two genuine lines")
        d1, d2 = _sub(q, p), _sub(s, r)
        den = _cross(d1, d2)
        if den == 0:
            raise _Degenerate("intersect of parallel lines")
        t = _cross(_sub(r, p), d2) / den
        return (p[0] + t * d1[0], p[1] + t * d1[1])
    if k == "parallel_point":
        p, q, r = coords[a[0]], coords[a[1]], coords[a[2]]
        if q == r:
            raise _Degenerate("parallel_point needs a direction")
        t = _rand_rational(rng)
        if t == 0:
            raise _Degenerate("parallel_point parameter zero")
        return (p[0] + t * (r[0] - q[0]), p[1] + t * (r[1] - q[1]))
    if k == "foot":
        p, q, r = coords[a[0]], coords[a[1]], coords[a[2]]
        if q == r:
            raise _Degenerate("foot needs a genuine line")
        d = _sub(r, q)
        if _cross(_sub(p, q), d) == 0:
            raise _Degenerate("foot of a point already on the line")
        t = _dot(_sub(p, q), d) / _dot(d, d)
        return (q[0] + t * d[0], q[1] + t * d[1])
    if k == "rotate":
        p, q = coords[a[0]], coords[a[1]]
        if p == q:
            raise _Degenerate("rotate about the point itself")
        t = _rand_rational(rng)
        if t == 0:
            raise _Degenerate("rotate by the identity")
        c = Fraction(1 - t * t, 1 + t * t)
        s = Fraction(2 * t, 1 + t * t)
        v = _sub(p, q)
        return (q[0] + c * v[0] - s * v[1], q[1] + s * v[0] + c * v[1])
    if k == "parallel_intersect":
        p = coords[a[0]]
        d1 = _sub(coords[a[2]], coords[a[1]])
        s0 = coords[a[3]]
        d2 = _sub(coords[a[5]], coords[a[4]])
        if d1 == (0, 0) or d2 == (0, 0):
            raise _Degenerate("parallel_intersect needs two directions")
        den = _cross(d1, d2)
        if den == 0:
            raise _Degenerate("parallel_intersect of parallel directions")
        t = _cross(_sub(s0, p), d2) / den
        x = (p[0] + t * d1[0], p[1] + t * d1[1])
        if x == p or x == s0:
            raise _Degenerate("parallel_intersect met an anchor point")
        return x
    raise ValueError(f"unknown constructor {k!r}")  # pragma: no cover


def realize(problem: Problem, seed: int) -> NumericModel:
    """Assign exact rational coordinates satisfying every constructor.

    Deterministic for a fixed seed.  Degenerate draws restart the whole
    model; a construction that stays degenerate after 100 attempts raises
    RealizationError naming the constructor.
    """
    if not problem.is_constructive():
        raise UnsupportedFormatError(
            "realize needs a constructive problem (every point constructed)"
        )
    rng = random.Random(seed)
    free = set(problem.free_point_indices())
    last_reason = ""
    for _ in range(_MAX_ATTEMPTS):
        coords: dict[int, Coord] = {}
        try:
            for idx, ctor in enumerate(problem.constructors):
                pt = _build_point(ctor, coords, rng)
                if ctor.kind == "free" and any(
                    coords[j] == pt for j in coords if j in free
                ):
                    raise _Degenerate("coincident free points")
                coords[idx] = pt
            return NumericModel(coords=coords, seed=seed)
        except _Degenerate as exc:
            failed = problem.points[idx]
            last_reason = f"{failed} ({exc})"
    raise RealizationError(
        f"could not realize {problem.name}: {last_reason} after {_MAX_ATTEMPTS} attempts"
    )


def eval_fact(model: NumericModel, fact: Fact) -> bool:
    """Exact truth of a fact in a model; no tolerances."""
    c = model.coords
    p = fact.pred
    a = fact.args
    if p == "coll":
        u = _sub(c[a[1]], c[a[0]])
        v = _sub(c[a[2]], c[a[0]])
        return _cross(u, v) == 0
    if p == "ncoll":
        u = _sub(c[a[1]], c[a[0]])
        v = _sub(c[a[2]], c[a[0]])
        return _cross(u, v) != 0
    if p == "para":
        u = _sub(c[a[1]], c[a[0]])
        v = _sub(c[a[3]], c[a[2]])
        return u != (0, 0) and v != (0, 0) and _cross(u, v) == 0
    if p == "perp":
        u = _sub(c[a[1]], c[a[0]])
        v = _sub(c[a[3]], c[a[2]])
        return _dot(u, v) == 0
    if p == "midp":
        m, x, y = (c[i] for i in a)
        return (2 * m[0], 2 * m[1]) == (x[0] + y[0], x[1] + y[1])
    if p == "cong":
        return _dist2(c[a[0]], c[a[1]]) == _dist2(c[a[2]], c[a[3]])
    if p == "eqangle":
        u = _sub(c[a[1]], c[a[0]])
        v = _sub(c[a[3]], c[a[2]])
        w = _sub(c[a[5]], c[a[4]])
        z = _sub(c[a[7]], c[a[6]])
        return _cross(u, v) * _dot(w, z) == _cross(w, z) * _dot(u, v)
    if p == "eqratio":
        ab = _dist2(c[a[0]], c[a[1]])
        cd = _dist2(c[a[2]], c[a[3]])
        ef = _dist2(c[a[4]], c[a[5]])
        gh = _dist2(c[a[6]], c[a[7]])
        return ab * gh == cd * ef
    if p == "simtri":
        ab = _dist2(c[a[0]], c[a[1]])
        bc = _dist2(c[a[1]], c[a[2]])
        ca = _dist2(c[a[2]], c[a[0]])
        de = _dist2(c[a[3]], c[a[4]])
        ef = _dist2(c[a[4]], c[a[5]])
        fd = _dist2(c[a[5]], c[a[3]])
        return ab * ef == bc * de and bc * fd == ca * ef and ab * fd == ca * de
    if p == "cyclic":
        rows = []
        for i in a:
            x, y = c[i]
            rows.append((x, y, x * x + y * y, Fraction(1)))
        return _det4(rows) == 0
    if p == "neq":
        return c[a[0]] != c[a[1]]
    raise ValueError(f"no numeric semantics for {p!r}")  # pragma: no cover


def _det4(rows) -> Fraction:
    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    total = Fraction(0)
    sign = 1
    for col in range(4):
        minor = [
            [rows[r][c] for c in range(4) if c != col] for r in range(1, 4)
        ]
        total += sign * rows[0][col] * det3(minor)
        sign = -sign
    return total


def check_conjecture(problem: Problem, n_models: int, seed: int) -> CheckReport:
    """Test the goal on random exact models; a check, not a proof.

    Models are realized with seeds ``seed .. seed+n_models-1``; those
    violating the explicitly stated (non-constructor) hypotheses are
    discarded.  ``refuted`` needs one valid countermodel; ``supported``
    needs the goal to hold in every valid model with at least
    ``CheckReport.MIN_VALID`` of them.
    """
    if not problem.is_constructive():
        raise UnsupportedFormatError("check_conjecture needs a constructive problem")
    tried = 0
    valid = 0
    holds = 0
    refuted = False
    for s in range(seed, seed + n_models):
        tried += 1
        try:
            model = realize(problem, s)
        except RealizationError:
            continue
        if not all(eval_fact(model, h) for h in problem.extra_hypotheses):
            continue
        valid += 1
        if eval_fact(model, problem.goal):
            holds += 1
        else:
            refuted = True
    if refuted:
        verdict = "refuted"
    elif valid >= CheckReport.MIN_VALID and holds == valid:
        verdict = "supported"
    else:
        verdict = "inconclusive"
    return CheckReport(
        models_tried=tried, models_valid=valid, goal_holds=holds, verdict=verdict
    )
