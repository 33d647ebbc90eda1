"""Proof extraction from derivation records plus text/LaTeX/JSON rendering.

The extractor walks backwards from the goal through each fact's first
recorded derivation, sharing repeated subtrees, so the result is a DAG
whose leaves are hypotheses.  Rendering aims at a classroom register:
facts are phrased in words and each rule can carry a one-sentence
explanation loaded from the rule file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import NoProofError
from .facts import Fact, FactBase, HYPOTHESIS


@dataclass
class ProofTree:
    root: Fact
    nodes: dict[Fact, tuple[str, tuple[Fact, ...]]]  # fact -> (rule, premises)
    leaves: list[Fact]
    depth: int
    step_count: int
    order: list[Fact] = field(default_factory=list)  # leaves then steps, topological


@dataclass
class ProofStats:
    step_count: int
    depth: int
    rule_histogram: dict[str, int]
    elapsed: float


def extract_proof(saturation, goal: Fact) -> ProofTree:
    """Backward walk over first derivations; deterministic.

    Accepts a SaturationResult or a FactBase.  Raises NoProofError when the
    canonical goal is not a derived or given fact.
    """
    fb: FactBase = getattr(saturation, "factbase", saturation)
    if goal not in fb:
        raise NoProofError(f"goal {goal} is not in the fact base")
    nodes: dict[Fact, tuple[str, tuple[Fact, ...]]] = {}
    leaves: list[Fact] = []
    depth: dict[Fact, int] = {}
    stack = [goal]
    visiting: list[Fact] = []
    while stack:
        fact = stack.pop()
        if fact in depth:
            continue
        deriv = fb.derivations[fact]
        if deriv.is_hypothesis:
            depth[fact] = 0
            if fact not in leaves:
                leaves.append(fact)
            continue
        missing = [p for p in deriv.premises if p not in depth]
        if missing:
            stack.append(fact)
            stack.extend(missing)
            continue
        nodes[fact] = (deriv.rule_name, deriv.premises)
        depth[fact] = 1 + max((depth[p] for p in deriv.premises), default=0)
    ordered_steps = sorted(nodes, key=fb.step_of)
    ordered_leaves = sorted(leaves, key=fb.step_of)
    return ProofTree(
        root=goal,
        nodes=nodes,
        leaves=ordered_leaves,
        depth=depth[goal],
        step_count=len(nodes),
        order=ordered_leaves + ordered_steps,
    )


def proof_stats(tree: ProofTree, elapsed: float = 0.0) -> ProofStats:
    hist: dict[str, int] = {}
    for rule, _ in tree.nodes.values():
        hist[rule] = hist.get(rule, 0) + 1
    return ProofStats(
        step_count=tree.step_count,
        depth=tree.depth,
        rule_histogram=hist,
        elapsed=elapsed,
    )


def _names(points, args):
    return [points[i] for i in args]


def fact_in_words(fact: Fact, points: list[str]) -> str:
    n = _names(points, fact.args)
    p = fact.pred
    if p == "coll":
        return f"{n[0]}, {n[1]}, {n[2]} are collinear"
    if p == "ncoll":
        return f"{n[0]}, {n[1]}, {n[2]} are not collinear"
    if p == "para":
        return f"{n[0]}{n[1]} ∥ {n[2]}{n[3]}"
    if p == "perp":
        return f"{n[0]}{n[1]} ⊥ {n[2]}{n[3]}"
    if p == "midp":
        return f"{n[0]} is the midpoint of [{n[1]}{n[2]}]"
    if p == "cong":
        return f"|{n[0]}{n[1]}| = |{n[2]}{n[3]}|"
    if p == "eqangle":
        return (
            f"∠({n[0]}{n[1]},{n[2]}{n[3]}) = "
            f"∠({n[4]}{n[5]},{n[6]}{n[7]})"
        )
    if p == "eqratio":
        return (
            f"|{n[0]}{n[1]}| : |{n[2]}{n[3]}| = "
            f"|{n[4]}{n[5]}| : |{n[6]}{n[7]}|"
        )
    if p == "simtri":
        return (
            f"triangles {n[0]}{n[1]}{n[2]} and {n[3]}{n[4]}{n[5]} are similar"
        )
    if p == "cyclic":
        return f"{n[0]}, {n[1]}, {n[2]}, {n[3]} are concyclic"
    if p == "neq":
        return f"{n[0]} ≠ {n[1]}"
    return f"{p}({', '.join(n)})"


def _fact_latex(fact: Fact, points: list[str]) -> str:
    n = _names(points, fact.args)
    p = fact.pred
    if p == "para":
        return f"${n[0]}{n[1]} \\parallel {n[2]}{n[3]}$"
    if p == "perp":
        return f"${n[0]}{n[1]} \\perp {n[2]}{n[3]}$"
    if p == "cong":
        return f"$|{n[0]}{n[1]}| = |{n[2]}{n[3]}|$"
    if p == "midp":
        return f"${n[0]}$ is the midpoint of $[{n[1]}{n[2]}]$"
    if p == "eqangle":
        return (
            f"$\\angle({n[0]}{n[1]},{n[2]}{n[3]}) = "
            f"\\angle({n[4]}{n[5]},{n[6]}{n[7]})$"
        )
    if p == "neq":
        return f"${n[0]} \\neq {n[1]}$"
    if p == "simtri":
        return (
            f"$\\triangle {n[0]}{n[1]}{n[2]} \\sim \\triangle {n[3]}{n[4]}{n[5]}$"
        )
    return fact_in_words(fact, points)


def render_proof(
    tree: ProofTree,
    fmt: str,
    points: list[str],
    templates: dict[str, str] | None = None,
) -> str:
    """Render a proof as text, LaTeX, or a JSON derivation DAG."""
    templates = templates or {}
    if fmt == "json":
        return _render_json(tree, points)
    if fmt == "latex":
        return _render_latex(tree, points, templates)
    if fmt == "text":
        return _render_text(tree, points, templates)
    raise ValueError(f"unknown proof format {fmt!r}")


def _step_labels(tree: ProofTree):
    labels: dict[Fact, str] = {}
    for i, leaf in enumerate(tree.leaves, start=1):
        labels[leaf] = f"H{i}"
    step_no = 0
    for fact in tree.order:
        if fact in tree.nodes:
            step_no += 1
            labels[fact] = str(step_no)
    return labels


def _justification(rule: str, premises, labels, templates) -> str:
    desc = templates.get(rule, f"rule {rule}")
    if premises:
        refs = ", ".join(labels[p] for p in premises)
        return f"by {desc}, from {refs}"
    return f"by {desc}"


def _render_text(tree, points, templates) -> str:
    labels = _step_labels(tree)
    lines = []
    if tree.step_count == 0:
        lines.append("The goal is a hypothesis.")
        lines.append(f"H1. {fact_in_words(tree.root, points)}.")
        return "\n".join(lines) + "\n"
    lines.append("Hypotheses:")
    for leaf in tree.leaves:
        lines.append(f"  {labels[leaf]}. {fact_in_words(leaf, points)}.")
    lines.append("Proof:")
    for fact in tree.order:
        if fact not in tree.nodes:
            continue
        rule, premises = tree.nodes[fact]
        lines.append(
            f"  {labels[fact]}. {fact_in_words(fact, points)}"
            f" — {_justification(rule, premises, labels, templates)}."
        )
    lines.append(f"Therefore {fact_in_words(tree.root, points)}.")
    return "\n".join(lines) + "\n"


def _render_latex(tree, points, templates) -> str:
    labels = _step_labels(tree)
    out = [
        "\\documentclass{article}",
        "\\usepackage{amsmath,amssymb}",
        "\\begin{document}",
    ]
    if tree.step_count == 0:
        out.append("The goal is a hypothesis: " + _fact_latex(tree.root, points) + ".")
    else:
        out.append("Hypotheses:")
        out.append("\\begin{itemize}")
        for leaf in tree.leaves:
            out.append(f"\\item[{labels[leaf]}.] {_fact_latex(leaf, points)}")
        out.append("\\end{itemize}")
        out.append("Proof steps:")
        out.append("\\begin{itemize}")
        for fact in tree.order:
            if fact not in tree.nodes:
                continue
            rule, premises = tree.nodes[fact]
            just = _justification(rule, premises, labels, templates)
            out.append(f"\\item[{labels[fact]}.] {_fact_latex(fact, points)} ({just})")
        out.append("\\end{itemize}")
        out.append("Therefore " + _fact_latex(tree.root, points) + ".")
    out.append("\\end{document}")
    return "\n".join(out) + "\n"


def proof_json_dict(tree: ProofTree, points: list[str]) -> dict:
    ids = {fact: i for i, fact in enumerate(tree.order)}
    facts = [
        {
            "id": ids[f],
            "pred": f.pred,
            "points": _names(points, f.args),
            "hypothesis": f not in tree.nodes,
        }
        for f in tree.order
    ]
    steps = []
    for f in tree.order:
        if f not in tree.nodes:
            continue
        rule, premises = tree.nodes[f]
        steps.append(
            {
                "id": ids[f],
                "rule": rule,
                "premises": [ids[p] for p in premises],
                "conclusion": ids[f],
            }
        )
    stats = {
        "step_count": tree.step_count,
        "depth": tree.depth,
        "rule_histogram": proof_stats(tree).rule_histogram,
    }
    return {"goal": ids[tree.root], "facts": facts, "steps": steps, "stats": stats}


def _render_json(tree, points) -> str:
    return json.dumps(proof_json_dict(tree, points), indent=2, sort_keys=True) + "\n"


def replay_proof(tree: ProofTree, problem, rules) -> bool:
    """Re-derive the root by applying each step's named rule to its premises.

    Independent forward replay: starts from the problem's initial facts,
    walks the steps in topological order, and checks that every recorded
    application really produces its conclusion (side conditions included).
    Returns True iff the whole tree replays and ends at the root.
    """
    from .engine import apply_rule, initial_factbase

    rules_by_name = {r.name: r for r in rules.rules}
    fb = initial_factbase(problem)
    for leaf in tree.leaves:
        if leaf not in fb:
            return False
    for fact in tree.order:
        if fact not in tree.nodes:
            continue
        rule_name, premises = tree.nodes[fact]
        rule = rules_by_name.get(rule_name)
        if rule is None:
            return False
        if any(p not in fb for p in premises):
            return False
        produced = apply_rule(rule, fb, set(premises))
        if (fact, premises) not in produced:
            return False
        fb.insert(fact, rule_name, premises)
    return tree.root in fb or tree.root in tree.leaves
