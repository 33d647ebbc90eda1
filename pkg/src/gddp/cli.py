"""Command-line front end: prove, check, saturate, hints, graph.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 for a proved
goal or supported conjecture, 1 for not derivable or refuted, 2 for a
resource limit or an inconclusive check, 3 for usage or parse errors.
JSON output is byte-stable for a fixed configuration and seed (wall-clock
timings appear only in the text renderings).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from .engine import Limits, prove, saturate
from .errors import GddpError, ParseError
from .facts import HYPOTHESIS
from .hints import build_graph, count_proofs, next_steps
from .numeric import check_conjecture
from .parser import (
    Problem,
    RuleSet,
    detect_format,
    parse_problem,
    parse_rules,
)
from .proof import fact_in_words, proof_json_dict, proof_stats, render_proof

EXIT_POSITIVE = 0
EXIT_NEGATIVE = 1
EXIT_LIMIT = 2
EXIT_USAGE = 3


def bundled_rules_dir() -> Path:
    env = os.environ.get("GDDP_RULES_DIR")
    if env:
        return Path(env)
    return Path(resources.files("gddp") / "rules")


def _resolve_include(name: str, problem_dir: Path) -> Path:
    for base in (problem_dir, bundled_rules_dir()):
        cand = base / name
        if cand.is_file():
            return cand
    raise FileNotFoundError(f"cannot resolve rule file {name!r}")


def load_problem(path: str) -> Problem:
    text = Path(path).read_text(encoding="utf-8")
    return parse_problem(text, detect_format(path), name_hint=Path(path).stem)


def load_rules_for(problem: Problem, problem_path: str, rules_arg: str | None) -> RuleSet:
    if rules_arg:
        return parse_rules(Path(rules_arg).read_text(encoding="utf-8"))
    problem_dir = Path(problem_path).resolve().parent
    names = problem.includes or ["gdd.rules"]
    merged = RuleSet()
    seen = set()
    for name in names:
        rs = parse_rules(_resolve_include(name, problem_dir).read_text(encoding="utf-8"))
        for rule in rs.rules:
            if rule.name in seen:
                raise ParseError(f"duplicate rule name {rule.name!r} across includes")
            seen.add(rule.name)
            merged.rules.append(rule)
        merged.symmetries.extend(rs.symmetries)
        merged.templates.update(rs.templates)
    return merged


def _limits(args) -> Limits:
    return Limits(
        max_facts=args.max_facts, max_rounds=args.max_rounds, timeout=args.timeout
    )


def _sat_summary(sat) -> dict:
    return {
        "facts": len(sat.factbase),
        "rounds": sat.rounds,
        "rule_applications": sat.rule_applications,
        "saturated": sat.saturated,
    }


def _emit_json(payload: dict):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_prove(args, problem: Problem, rules: RuleSet) -> int:
    result = prove(problem, rules, _limits(args))
    sat = result.saturation
    if args.format == "json":
        payload = {
            "command": "prove",
            "problem": problem.name,
            "status": result.status,
            "goal": problem.fact_str(problem.goal),
            "saturation": _sat_summary(sat),
            "proof": proof_json_dict(result.proof, problem.points)
            if result.proof
            else None,
        }
        _emit_json(payload)
    else:
        if result.status == "proved":
            print(render_proof(result.proof, args.format, problem.points, rules.templates))
            stats = proof_stats(result.proof, sat.elapsed)
            print(f"proof steps: {stats.step_count}, time: {sat.elapsed:.3f} s")
        elif result.status == "not_derivable":
            print(
                f"goal {problem.fact_str(problem.goal)} is not derivable "
                f"under the loaded rules (saturated: {len(sat.factbase)} facts, "
                f"{sat.rounds} rounds, {sat.elapsed:.3f} s)"
            )
        else:
            print(
                f"resource limit before a verdict on {problem.fact_str(problem.goal)} "
                f"({len(sat.factbase)} facts, {sat.rounds} rounds, {sat.elapsed:.3f} s)"
            )
    if result.status == "proved":
        return EXIT_POSITIVE
    if result.status == "not_derivable":
        return EXIT_NEGATIVE
    return EXIT_LIMIT


def _cmd_check(args, problem: Problem, rules: RuleSet) -> int:
    report = check_conjecture(problem, args.models, args.seed)
    if args.format == "json":
        _emit_json(
            {
                "command": "check",
                "problem": problem.name,
                "goal": problem.fact_str(problem.goal),
                "models_tried": report.models_tried,
                "models_valid": report.models_valid,
                "goal_holds": report.goal_holds,
                "verdict": report.verdict,
            }
        )
    else:
        print(
            f"{report.models_valid}/{report.models_tried} valid models, "
            f"goal holds in {report.goal_holds}: {report.verdict}"
        )
    if report.verdict == "supported":
        return EXIT_POSITIVE
    if report.verdict == "refuted":
        return EXIT_NEGATIVE
    return EXIT_LIMIT


def _cmd_saturate(args, problem: Problem, rules: RuleSet) -> int:
    sat = saturate(problem, rules, _limits(args))
    fb = sat.factbase
    if args.format == "json":
        _emit_json(
            {
                "command": "saturate",
                "problem": problem.name,
                "saturation": _sat_summary(sat),
                "facts": [
                    {
                        "pred": f.pred,
                        "points": [problem.points[i] for i in f.args],
                        "rule": fb.derivations[f].rule_name,
                    }
                    for f in fb.facts()
                ],
            }
        )
    else:
        for f in fb.facts():
            rule = fb.derivations[f].rule_name
            print(f"{problem.fact_str(f)}  [{rule}]")
        print(
            f"facts: {len(fb)}, rounds: {sat.rounds}, "
            f"applications: {sat.rule_applications}, "
            f"saturated: {'yes' if sat.saturated else 'no'}, "
            f"time: {sat.elapsed:.3f} s"
        )
    return EXIT_POSITIVE if sat.saturated else EXIT_LIMIT


def _cmd_hints(args, problem: Problem, rules: RuleSet) -> int:
    graph = build_graph(problem, rules, _limits(args))
    hints = next_steps(graph, established=set(), k=args.k)
    if args.format == "json":
        _emit_json(
            {
                "command": "hints",
                "problem": problem.name,
                "goal_derived": problem.goal in graph.factbase,
                "proof_count": count_proofs(graph, cap=args.proof_cap),
                "hints": [
                    {
                        "fact": problem.fact_str(h.fact),
                        "rule": h.rule_name,
                        "premises": [problem.fact_str(p) for p in h.premises],
                        "on_goal_path": h.on_goal_path,
                    }
                    for h in hints
                ],
            }
        )
    else:
        for i, h in enumerate(hints, start=1):
            mark = " [on goal path]" if h.on_goal_path else ""
            prem = ", ".join(fact_in_words(p, problem.points) for p in h.premises)
            print(
                f"{i}. {fact_in_words(h.fact, problem.points)} "
                f"(via {h.rule_name} from {prem}){mark}"
            )
        print(f"distinct proofs of the goal: {count_proofs(graph, cap=args.proof_cap)}")
    return EXIT_POSITIVE if not graph.partial else EXIT_LIMIT


def _cmd_graph(args, problem: Problem, rules: RuleSet) -> int:
    graph = build_graph(problem, rules, _limits(args))
    fb = graph.factbase
    ids = {f: i for i, f in enumerate(fb.facts())}
    payload = {
        "command": "graph",
        "problem": problem.name,
        "partial": graph.partial,
        "goal": ids.get(problem.goal),
        "facts": [
            {
                "id": ids[f],
                "pred": f.pred,
                "points": [problem.points[i] for i in f.args],
                "hypothesis": fb.derivations[f].rule_name == HYPOTHESIS,
                "goal_relevant": f in graph.goal_relevant,
            }
            for f in fb.facts()
        ],
        "applications": [
            {
                "rule": app.rule_name,
                "premises": [ids[p] for p in app.premises],
                "conclusion": ids[app.conclusion],
            }
            for app in graph.applications
        ],
    }
    _emit_json(payload)
    return EXIT_POSITIVE if not graph.partial else EXIT_LIMIT


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gddp",
        description="forward-chaining deductive-database prover for plane geometry",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("prove", "saturate and report a proof of the goal"),
        ("check", "test the conjecture on random exact-rational models"),
        ("saturate", "dump the full closure of the hypotheses"),
        ("hints", "rank one-step consequences of the hypotheses"),
        ("graph", "export the all-proofs deduction graph as JSON"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("problem", help="problem file (.gdd constructive, .p first-order)")
        p.add_argument("--rules", help="rule file overriding the problem's includes")
        p.add_argument(
            "--format", choices=("text", "latex", "json"), default="text"
        )
        p.add_argument("--max-facts", type=int, default=200000)
        p.add_argument("--max-rounds", type=int, default=10000)
        p.add_argument("--timeout", type=float, default=10.0)
        if name == "check":
            p.add_argument("--models", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
        if name == "hints":
            p.add_argument("--k", type=int, default=5)
            p.add_argument("--proof-cap", type=int, default=1000000)
    return ap


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        problem = load_problem(args.problem)
        rules = load_rules_for(problem, args.problem, args.rules)
        handler = {
            "prove": _cmd_prove,
            "check": _cmd_check,
            "saturate": _cmd_saturate,
            "hints": _cmd_hints,
            "graph": _cmd_graph,
        }[args.command]
        return handler(args, problem, rules)
    except (GddpError, FileNotFoundError, OSError, ValueError) as exc:
        print(f"gddp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
