"""Semi-naive forward chaining over a rule set until fixpoint or limits.

Each round matches every rule with the restriction that at least one
premise comes from the facts discovered in the previous round, inserting
the canonical conclusions afterwards.  Rule order, premise order, and
step-index order of candidate facts fully determine the run, so two runs
on the same input produce identical fact bases and derivations.

Distinctness policy: free points of a constructive problem are pairwise
distinct and seeded as ``neq`` facts; constructed points get only the
distinctness their constructors guarantee; first-order problems get only
the disequalities they state.  Rule side conditions are discharged against
those facts, never assumed.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Optional

from .facts import Fact, FactBase, HYPOTHESIS, canonicalize, instances_matching
from .parser import Problem, Rule, RuleSet


@dataclass(frozen=True)
class Limits:
    max_facts: int = 200000
    max_rounds: int = 10000
    timeout: float = 10.0

    def __post_init__(self):
        if self.max_facts <= 0 or self.max_rounds <= 0 or self.timeout <= 0:
            raise ValueError("limits must be positive")


@dataclass
class SaturationResult:
    factbase: FactBase
    rounds: int
    rule_applications: int
    saturated: bool
    elapsed: float


@dataclass
class ProofResult:
    status: str  # proved | not_derivable | resource_limit
    goal: Fact
    saturation: SaturationResult
    proof: Optional[object] = None  # ProofTree, attached by prove()


def initial_factbase(problem: Problem, record_all: bool = False) -> FactBase:
    """Hypotheses, constructor-emitted facts, and policy distinctness facts."""
    fb = FactBase(record_all_derivations=record_all)
    for h in problem.hypotheses:
        fb.insert(h, HYPOTHESIS)
    if problem.fmt == "construct":
        for i, j in itertools.combinations(problem.free_point_indices(), 2):
            fb.insert(canonicalize(Fact("neq", (i, j))), HYPOTHESIS)
    return fb


def _side_ok(fb: FactBase, env, side_conditions) -> bool:
    for x, y in side_conditions:
        vx, vy = env[x], env[y]
        if vx is None or vy is None:
            continue
        if vx == vy:
            return False
        if Fact("neq", (min(vx, vy), max(vx, vy))) not in fb:
            return False
    return True


def apply_rule(rule: Rule, fb: FactBase, delta) -> list[tuple[Fact, tuple[Fact, ...]]]:
    """All (conclusion, premises) pairs with premises in ``fb``, at least
    one premise in ``delta``, and side conditions discharged.

    Conclusions are canonical; the list carries no duplicate
    (conclusion, premises) pairs and is deterministic.
    """
    delta_set = delta if isinstance(delta, (set, frozenset, dict)) else set(delta)
    if not delta_set:
        return []
    n_prem = len(rule.premises)
    nvars = len(rule.var_names)
    results: list[tuple[Fact, tuple[Fact, ...]]] = []
    seen: set[tuple[Fact, tuple[Fact, ...]]] = set()
    cpred, cargs = rule.conclusion

    def emit(env, chosen):
        concl = canonicalize(Fact(cpred, tuple(env[v] for v in cargs)))
        key = (concl, tuple(chosen))
        if key not in seen:
            seen.add(key)
            results.append(key)

    # (premise index, source class, resolved slots) -> viable (fact, instance)
    # pairs; the fact base is frozen for the duration of the call, so
    # repeated sub-patterns replay instead of rescanning
    scan_cache: dict[tuple, list] = {}

    def scan(i, source, resolved):
        key = (i, source, resolved)
        hit = scan_cache.get(key)
        if hit is not None:
            return hit
        pred = rule.premises[i][0]
        pairs = []
        for fact in fb.candidates(pred, {p for p in resolved if p is not None}):
            if source == "delta":
                if fact not in delta_set:
                    continue
            elif source == "old" and fact in delta_set:
                continue
            for inst in instances_matching(fact, resolved):
                pairs.append((fact, inst))
        scan_cache[key] = pairs
        return pairs

    def rec(k, env, chosen, order, dpos):
        if k == n_prem:
            chosen_in_order = tuple(chosen[order.index(i)] for i in range(n_prem))
            emit(env, chosen_in_order)
            return
        i = order[k]
        slots = rule.premises[i][1]
        resolved = tuple(env[v] for v in slots)
        source = "delta" if i == dpos else ("old" if i < dpos else "all")
        for fact, inst in scan(i, source, resolved):
            new_vars = []
            ok = True
            for v, val in zip(slots, inst):
                cur = env[v]
                if cur is None:
                    env[v] = val
                    new_vars.append(v)
                elif cur != val:
                    ok = False
                    break
            if ok and _side_ok(fb, env, rule.side_conditions):
                chosen.append(fact)
                rec(k + 1, env, chosen, order, dpos)
                chosen.pop()
            for v in new_vars:
                env[v] = None

    for dpos in range(n_prem):
        # bind the delta premise first; deltas are small after early rounds
        order = [dpos] + [i for i in range(n_prem) if i != dpos]
        rec(0, [None] * nvars, [], order, dpos)
    return results


def saturate(
    problem: Problem,
    rules: RuleSet,
    limits: Limits = Limits(),
    *,
    record_all: bool = False,
    goal_stop: bool = False,
) -> SaturationResult:
    """Close the problem's facts under the rule set.

    ``saturated`` is True only at a genuine fixpoint; tripping a limit or
    stopping early on the goal reports False instead of raising.
    """
    start = time.monotonic()
    fb = initial_factbase(problem, record_all=record_all)
    goal = problem.goal if goal_stop else None
    rounds = 0
    applications = 0
    limit_hit = False
    stopped_on_goal = goal is not None and goal in fb
    delta: list[Fact] = fb.facts()
    while delta and not limit_hit and not stopped_on_goal:
        if rounds >= limits.max_rounds:
            limit_hit = True
            break
        rounds += 1
        delta_set = set(delta)
        new: list[Fact] = []
        for rule in rules.rules:
            if time.monotonic() - start > limits.timeout:
                limit_hit = True
                break
            for concl, premises in apply_rule(rule, fb, delta_set):
                applications += 1
                if fb.insert(concl, rule.name, premises):
                    new.append(concl)
                    if goal is not None and concl == goal:
                        stopped_on_goal = True
                        break
                    if len(fb) >= limits.max_facts:
                        limit_hit = True
                        break
            if limit_hit or stopped_on_goal:
                break
        delta = new
    elapsed = time.monotonic() - start
    # stopping early on the goal leaves the fixpoint question open, so the
    # result is reported unsaturated even if the last round added nothing
    saturated = not delta and not limit_hit and not stopped_on_goal
    return SaturationResult(
        factbase=fb,
        rounds=rounds,
        rule_applications=applications,
        saturated=saturated,
        elapsed=elapsed,
    )


def prove(
    problem: Problem, rules: RuleSet, limits: Limits = Limits(), *, goal_stop: bool = True
) -> ProofResult:
    """Saturate and report whether the goal became a fact.

    ``not_derivable`` is only reported from a genuine fixpoint; if a
    resource limit tripped first the status says so.
    """
    sat = saturate(problem, rules, limits, goal_stop=goal_stop)
    goal = problem.goal
    if goal in sat.factbase:
        from .proof import extract_proof

        tree = extract_proof(sat, goal)
        return ProofResult(status="proved", goal=goal, saturation=sat, proof=tree)
    if sat.saturated:
        return ProofResult(status="not_derivable", goal=goal, saturation=sat)
    return ProofResult(status="resource_limit", goal=goal, saturation=sat)
