"""Predicates, canonical fact forms, and the indexed fact base.

Every geometric statement is a ``Fact``: a predicate tag applied to an
ordered tuple of point indices.  Each predicate carries a symmetry group, a
set of argument permutations under which the statement's truth is preserved
(swapping the endpoints of a segment, exchanging the two sides of an
equality, ...).  Instead of firing those permutations as rewrite rules, the
whole orbit is collapsed at insertion time: a stored fact is always the
lexicographically smallest tuple in its orbit, ordered by point index.  That
keeps the fact base small and makes fixpoint detection a set-membership
test.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import MalformedFactError, NonCanonicalFactError

HYPOTHESIS = "hypothesis"


class Fact(NamedTuple):
    pred: str
    args: tuple[int, ...]

    def __str__(self):
        return f"{self.pred}({','.join(str(a) for a in self.args)})"


class Derivation(NamedTuple):
    conclusion: Fact
    rule_name: str
    premises: tuple[Fact, ...]
    step_index: int

    @property
    def is_hypothesis(self):
        return self.rule_name == HYPOTHESIS


def _pair_group():
    # para/perp/cong: swap inside either pair, swap the pairs; order 8
    perms = set()
    for swap_a in (False, True):
        for swap_b in (False, True):
            for swap_pairs in (False, True):
                a = (1, 0) if swap_a else (0, 1)
                b = (3, 2) if swap_b else (2, 3)
                perms.add(b + a if swap_pairs else a + b)
    return tuple(sorted(perms))


def _four_segment_group():
    """Symmetries of eqangle/eqratio: 8 args read as 4 segments.

    Truth is invariant under reversing any segment and under the slot
    permutations that preserve the partition {{0,3},{1,2}} of the four
    segment slots (equality symmetry, exchanging the two sides of each
    comparison, and the means/extremes exchange).
    """
    slot_perms = []
    target = {frozenset({0, 3}), frozenset({1, 2})}
    for p in itertools.permutations(range(4)):
        if {frozenset({p[0], p[3]}), frozenset({p[1], p[2]})} == target:
            slot_perms.append(p)
    perms = []
    for sp in slot_perms:
        for rev in itertools.product((False, True), repeat=4):
            perm = []
            for slot in sp:
                a, b = 2 * slot, 2 * slot + 1
                perm.extend((b, a) if rev[slot] else (a, b))
            perms.append(tuple(perm))
    return tuple(sorted(perms))


def _simtri_group():
    # permute both triples in lockstep, optionally swap the triples
    perms = []
    for p in itertools.permutations(range(3)):
        first = tuple(p) + tuple(i + 3 for i in p)
        second = tuple(i + 3 for i in p) + tuple(p)
        perms.extend((first, second))
    return tuple(sorted(perms))


_ALL3 = tuple(itertools.permutations(range(3)))
_ALL4 = tuple(itertools.permutations(range(4)))

#: tag -> (arity, symmetry group as argument permutations)
PREDICATES: dict[str, tuple[int, tuple[tuple[int, ...], ...]]] = {
    "coll": (3, _ALL3),
    "ncoll": (3, _ALL3),
    "para": (4, _pair_group()),
    "perp": (4, _pair_group()),
    "cong": (4, _pair_group()),
    "midp": (3, ((0, 1, 2), (0, 2, 1))),
    "eqangle": (8, _four_segment_group()),
    "eqratio": (8, _four_segment_group()),
    "simtri": (6, _simtri_group()),
    "cyclic": (4, _ALL4),
    "neq": (2, ((0, 1), (1, 0))),
}


def arity(pred: str) -> int:
    return PREDICATES[pred][0]


def symmetry_group(pred: str) -> tuple[tuple[int, ...], ...]:
    return PREDICATES[pred][1]


def _check_shape(pred: str, args: Sequence[int]):
    if pred not in PREDICATES:
        raise MalformedFactError(f"unknown predicate {pred!r}")
    want = PREDICATES[pred][0]
    if len(args) != want:
        raise MalformedFactError(
            f"{pred} expects {want} points, got {len(args)}"
        )


@lru_cache(maxsize=262144)
def _canonical_args(pred: str, args: tuple[int, ...]) -> tuple[int, ...]:
    return min(tuple(args[i] for i in perm) for perm in PREDICATES[pred][1])


@lru_cache(maxsize=131072)
def _orbit(pred: str, args: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    seen = []
    have = set()
    for perm in PREDICATES[pred][1]:
        inst = tuple(args[i] for i in perm)
        if inst not in have:
            have.add(inst)
            seen.append(inst)
    return tuple(seen)


@lru_cache(maxsize=65536)
def _orbit_half_maps(pred: str, args: tuple[int, ...]):
    """For 8-ary facts: orbit instances grouped by first and last half.

    Joins on the 8-ary predicates bind one comparison side at a time, so
    premise matching with a fully bound half becomes a dict lookup instead
    of a scan over the whole orbit.
    """
    prefix: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    suffix: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for inst in _orbit(pred, args):
        prefix.setdefault(inst[:4], []).append(inst)
        suffix.setdefault(inst[4:], []).append(inst)
    return prefix, suffix


def instances_matching(fact: Fact, resolved: tuple) -> tuple[tuple[int, ...], ...]:
    """Orbit instances compatible with a partially resolved slot tuple.

    ``resolved`` holds a point index where the pattern is already bound
    and None elsewhere; the returned instances still need full
    unification when the pattern repeats variables.
    """
    if len(resolved) == 8:
        head, tail = resolved[:4], resolved[4:]
        if None not in head:
            prefix, _ = _orbit_half_maps(fact.pred, fact.args)
            return tuple(prefix.get(tuple(head), ()))
        if None not in tail:
            _, suffix = _orbit_half_maps(fact.pred, fact.args)
            return tuple(suffix.get(tuple(tail), ()))
    insts = _orbit(fact.pred, fact.args)
    bound = [(i, p) for i, p in enumerate(resolved) if p is not None]
    if not bound:
        return insts
    return tuple(
        inst for inst in insts if all(inst[i] == p for i, p in bound)
    )


def canonicalize(fact: Fact) -> Fact:
    """Return the orbit-minimal representative of ``fact``.

    Idempotent; raises MalformedFactError on an arity mismatch.
    """
    _check_shape(fact.pred, fact.args)
    return Fact(fact.pred, _canonical_args(fact.pred, fact.args))


def make_fact(pred: str, *args: int) -> Fact:
    return canonicalize(Fact(pred, tuple(args)))


def is_canonical(fact: Fact) -> bool:
    _check_shape(fact.pred, fact.args)
    return fact.args == _canonical_args(fact.pred, fact.args)


def orbit_instances(fact: Fact) -> tuple[tuple[int, ...], ...]:
    """All distinct argument tuples in the fact's symmetry orbit, in group order."""
    return _orbit(fact.pred, fact.args)


class Pattern(NamedTuple):
    """A predicate tag plus fixed points (wildcards as None)."""

    pred: str
    slots: tuple[Optional[int], ...]


class FactBase:
    """Set of canonical facts with a positional point index and derivations.

    Single writer: ``insert`` must not race with queries.  Facts and
    derivations are immutable values, so the base is safe to share
    read-only once saturation finishes.
    """

    def __init__(self, record_all_derivations: bool = False):
        self._steps: dict[Fact, int] = {}
        self._by_pred: dict[str, list[Fact]] = {}
        # (pred, position, point) -> facts, in insertion order
        self._index: dict[tuple[str, int, int], list[Fact]] = {}
        self._containing: dict[tuple[str, int], list[Fact]] = {}
        self._containing_sets: dict[tuple[str, int], set[Fact]] = {}
        self.derivations: dict[Fact, Derivation] = {}
        self.record_all = record_all_derivations
        self.all_derivations: dict[Fact, list[Derivation]] = {}

    def __len__(self):
        return len(self._steps)

    def __contains__(self, fact: Fact):
        return fact in self._steps

    def __iter__(self):
        return iter(self._steps)

    def facts(self) -> list[Fact]:
        return list(self._steps)

    def step_of(self, fact: Fact) -> int:
        return self._steps[fact]

    def of_pred(self, pred: str) -> list[Fact]:
        return self._by_pred.get(pred, [])

    def insert(self, fact: Fact, rule_name: str, premises: tuple[Fact, ...] = ()) -> bool:
        """Add a canonical fact; returns True iff it was new.

        The first derivation is never overwritten.  With
        ``record_all_derivations`` on, later distinct derivations of an
        existing fact are appended to ``all_derivations``.
        """
        if not is_canonical(fact):
            raise NonCanonicalFactError(f"{fact} is not in canonical form")
        if fact in self._steps:
            if self.record_all:
                deriv = Derivation(fact, rule_name, premises, self._steps[fact])
                known = self.all_derivations.setdefault(fact, [])
                if deriv not in known:
                    known.append(deriv)
            return False
        step = len(self._steps)
        self._steps[fact] = step
        self._by_pred.setdefault(fact.pred, []).append(fact)
        for pos, point in enumerate(fact.args):
            self._index.setdefault((fact.pred, pos, point), []).append(fact)
        for point in set(fact.args):
            self._containing.setdefault((fact.pred, point), []).append(fact)
            self._containing_sets.setdefault((fact.pred, point), set()).add(fact)
        deriv = Derivation(fact, rule_name, premises, step)
        self.derivations[fact] = deriv
        if self.record_all:
            self.all_derivations[fact] = [deriv]
        return True

    def at_position(self, pred: str, pos: int, point: int) -> list[Fact]:
        return self._index.get((pred, pos, point), [])

    def containing(self, pred: str, point: int) -> list[Fact]:
        return self._containing.get((pred, point), [])

    def candidates(self, pred: str, points: Iterable[int]) -> list[Fact]:
        """Facts of ``pred`` whose argument set contains every given point.

        A superset of the facts whose orbit can match a pattern fixing
        those points, since permutations never change the point set.
        """
        pts = list(points)
        if not pts:
            return self.of_pred(pred)
        lists = [self.containing(pred, p) for p in pts]
        if any(not l for l in lists):
            return []
        shortest = min(lists, key=len)
        if len(lists) == 1:
            return list(shortest)
        others = [
            self._containing_sets[(pred, p)]
            for p, l in zip(pts, lists)
            if l is not shortest
        ]
        return [f for f in shortest if all(f in s for s in others)]

    def match(self, pattern: Pattern) -> list[tuple[Fact, tuple[int, ...]]]:
        """All (fact, instance) pairs whose orbit matches the pattern.

        The instance is the orbit element realizing the match, so wildcard
        slots can be read off positionally.  Ordered by the fact's
        step index, then orbit order.
        """
        want = arity(pattern.pred)
        if len(pattern.slots) != want:
            raise MalformedFactError(
                f"pattern for {pattern.pred} expects {want} slots, got {len(pattern.slots)}"
            )
        fixed = [p for p in pattern.slots if p is not None]
        out = []
        for fact in self.candidates(pattern.pred, set(fixed)):
            for inst in orbit_instances(fact):
                if all(s is None or s == a for s, a in zip(pattern.slots, inst)):
                    out.append((fact, inst))
        return out

    def check_index_consistency(self) -> bool:
        """Every indexed entry is a stored fact and vice versa."""
        for (pred, pos, point), facts in self._index.items():
            for f in facts:
                if f not in self._steps or f.pred != pred or f.args[pos] != point:
                    return False
        for f in self._steps:
            for pos, point in enumerate(f.args):
                if f not in self._index.get((f.pred, pos, point), []):
                    return False
        return True
