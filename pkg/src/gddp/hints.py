"""All-proofs deduction graph and next-step hint queries.

Building the graph reruns saturation with goal-stop off and every distinct
derivation recorded, which is the expensive mode; the result is an
immutable bipartite graph of fact nodes and rule-application nodes.  Proof
counting and goal relevance only use well-founded applications (every
premise discovered before the conclusion), which keeps both queries
terminating and consistent with discovery order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .engine import Limits, SaturationResult, saturate
from .facts import Fact, FactBase, HYPOTHESIS
from .parser import Problem, RuleSet


@dataclass(frozen=True)
class Application:
    rule_name: str
    premises: tuple[Fact, ...]
    conclusion: Fact


@dataclass
class DeductionGraph:
    goal: Fact
    factbase: FactBase
    fact_nodes: list[Fact]
    applications: list[Application]
    goal_relevant: set[Fact]
    partial: bool  # a resource limit tripped; completeness not guaranteed
    saturation: SaturationResult
    by_conclusion: dict[Fact, list[Application]] = field(default_factory=dict)
    goal_distance: dict[Fact, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Hint:
    fact: Fact
    rule_name: str
    premises: tuple[Fact, ...]
    on_goal_path: bool


def _well_founded(app: Application, fb: FactBase) -> bool:
    limit = fb.step_of(app.conclusion)
    return all(fb.step_of(p) < limit for p in app.premises)


def build_graph(
    problem: Problem, rules: RuleSet, limits: Limits = Limits()
) -> DeductionGraph:
    """Full closure with every distinct derivation of every fact recorded."""
    sat = saturate(problem, rules, limits, record_all=True, goal_stop=False)
    fb = sat.factbase
    apps: list[Application] = []
    by_conclusion: dict[Fact, list[Application]] = {}
    for fact in fb.facts():
        for deriv in fb.all_derivations.get(fact, []):
            if deriv.is_hypothesis:
                continue
            app = Application(deriv.rule_name, deriv.premises, fact)
            apps.append(app)
            by_conclusion.setdefault(fact, []).append(app)

    goal = problem.goal
    relevant: set[Fact] = set()
    if goal in fb:
        stack = [goal]
        relevant.add(goal)
        while stack:
            fact = stack.pop()
            for app in by_conclusion.get(fact, []):
                if not _well_founded(app, fb):
                    continue
                for p in app.premises:
                    if p not in relevant:
                        relevant.add(p)
                        stack.append(p)

    distance: dict[Fact, int] = {}
    if goal in fb:
        distance[goal] = 0
        queue = deque([goal])
        while queue:
            fact = queue.popleft()
            d = distance[fact] + 1
            for app in by_conclusion.get(fact, []):
                if not _well_founded(app, fb):
                    continue
                for p in app.premises:
                    if p not in distance:
                        distance[p] = d
                        queue.append(p)

    return DeductionGraph(
        goal=goal,
        factbase=fb,
        fact_nodes=fb.facts(),
        applications=apps,
        goal_relevant=relevant,
        partial=not sat.saturated,
        saturation=sat,
        by_conclusion=by_conclusion,
        goal_distance=distance,
    )


def next_steps(
    graph: DeductionGraph,
    established: Iterable[Fact],
    goal: Optional[Fact] = None,
    k: int = 5,
) -> list[Hint]:
    """Facts derivable in exactly one rule application from what is known.

    Hypotheses count as established.  Goal-path hints come first, then
    closeness to the goal (application-node BFS distance), then discovery
    order; the list is truncated to ``k``.
    """
    goal = graph.goal if goal is None else goal
    fb = graph.factbase
    known: set[Fact] = {
        f for f in fb.facts() if fb.derivations[f].rule_name == HYPOTHESIS
    }
    known.update(established)
    goal_known = goal in fb
    hints: dict[Fact, Hint] = {}
    for app in graph.applications:
        if app.conclusion in known or app.conclusion in hints:
            continue
        if all(p in known for p in app.premises):
            on_path = goal_known and app.conclusion in graph.goal_relevant
            hints[app.conclusion] = Hint(
                fact=app.conclusion,
                rule_name=app.rule_name,
                premises=app.premises,
                on_goal_path=on_path,
            )
    big = len(fb) + 1

    def rank(h: Hint):
        return (
            0 if h.on_goal_path else 1,
            graph.goal_distance.get(h.fact, big) if goal_known else 0,
            fb.step_of(h.fact),
        )

    return sorted(hints.values(), key=rank)[:k]


def count_proofs(graph: DeductionGraph, goal: Optional[Fact] = None, cap: int = 1000000) -> int:
    """Number of distinct proof DAGs of the goal, saturating at ``cap``.

    Counts over well-founded applications by memoized backward
    enumeration: a hypothesis has one (empty) proof, and a derived fact
    sums, over its applications, the product of its premises' counts.
    """
    goal = graph.goal if goal is None else goal
    fb = graph.factbase
    if goal not in fb:
        return 0
    memo: dict[Fact, int] = {}

    def count(fact: Fact) -> int:
        if fact in memo:
            return memo[fact]
        deriv = fb.derivations[fact]
        if deriv.is_hypothesis:
            memo[fact] = 1
            return 1
        total = 0
        for app in graph.by_conclusion.get(fact, []):
            if not _well_founded(app, fb):
                continue
            ways = 1
            for p in app.premises:
                ways *= count(p)
                if ways >= cap:
                    ways = cap
                    break
            total += ways
            if total >= cap:
                total = cap
                break
        memo[fact] = total
        return total

    return count(goal)
