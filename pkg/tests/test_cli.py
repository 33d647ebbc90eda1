"""Command-line behavior: exit codes, stream discipline, stable JSON."""

import json
import os
import subprocess
import sys

import pytest

from conftest import PROBLEMS, RULES_FILE, corpus_path


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "gddp", *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=120,
        cwd=str(PROBLEMS.parent),
    )


def test_prove_p1_exit_zero_and_script():
    r = run_cli("prove", "problems/p1.gdd")
    assert r.returncode == 0
    assert "Therefore" in r.stdout
    assert "proof steps: 3" in r.stdout
    assert "time:" in r.stdout


def test_prove_p2_exit_one_names_goal():
    r = run_cli("prove", "problems/p2.gdd")
    assert r.returncode == 1
    assert "cong(B,D,A,C)" in r.stdout or "cong(A,C,B,D)" in r.stdout
    assert "not derivable" in r.stdout


def test_check_p1_supported_exit_zero():
    r = run_cli("check", "problems/p1.gdd", "--models", "25", "--seed", "7")
    assert r.returncode == 0
    assert "25/25" in r.stdout
    assert "supported" in r.stdout


def test_check_refuted_exit_one(tmp_path):
    bad = tmp_path / "bad.gdd"
    bad.write_text(corpus_path("p1.gdd").read_text().replace(
        "goal para(E, F, G, H)", "goal para(E, F, F, H)"))
    r = run_cli("check", str(bad), "--models", "5")
    assert r.returncode == 1
    assert "refuted" in r.stdout


def test_missing_file_exit_three():
    r = run_cli("prove", "problems/nope.gdd")
    assert r.returncode == 3
    assert r.stdout == ""
    assert "gddp:" in r.stderr


def test_parse_error_reports_location(tmp_path):
    bad = tmp_path / "broken.p"
    bad.write_text("fof(x,conjecture, midp(E,A) ).")
    r = run_cli("prove", str(bad))
    assert r.returncode == 3
    assert "midp/3" in r.stderr
    assert "line 1" in r.stderr


def test_json_outputs_are_byte_identical():
    a = run_cli("prove", "problems/p3.gdd", "--format", "json")
    b = run_cli("prove", "problems/p3.gdd", "--format", "json")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    g1 = run_cli("graph", "problems/p1.gdd")
    g2 = run_cli("graph", "problems/p1.gdd")
    assert g1.stdout == g2.stdout


def test_text_and_json_agree_on_numbers():
    text = run_cli("prove", "problems/p1.gdd")
    payload = json.loads(run_cli("prove", "problems/p1.gdd", "--format", "json").stdout)
    assert payload["status"] == "proved"
    steps = payload["proof"]["stats"]["step_count"]
    assert f"proof steps: {steps}," in text.stdout
    sat = run_cli("saturate", "problems/p1.gdd")
    sat_json = json.loads(run_cli("saturate", "problems/p1.gdd", "--format", "json").stdout)
    assert f"facts: {sat_json['saturation']['facts']}," in sat.stdout
    assert f"rounds: {sat_json['saturation']['rounds']}," in sat.stdout


def test_saturate_dumps_facts_with_provenance():
    r = run_cli("saturate", "problems/p2.gdd")
    assert r.returncode == 0
    assert "[hypothesis]" in r.stdout
    assert "saturated: yes" in r.stdout


def test_hints_output_marks_goal_path():
    r = run_cli("hints", "problems/p1.gdd", "--k", "3")
    assert r.returncode == 0
    assert "[on goal path]" in r.stdout
    assert "distinct proofs of the goal:" in r.stdout


def test_graph_export_schema():
    r = run_cli("graph", "problems/p1.gdd")
    payload = json.loads(r.stdout)
    assert payload["partial"] is False
    assert isinstance(payload["goal"], int)
    ids = {f["id"] for f in payload["facts"]}
    for app in payload["applications"]:
        assert app["conclusion"] in ids
        assert set(app["premises"]) <= ids
    assert any(f["goal_relevant"] for f in payload["facts"])


def test_latex_format():
    r = run_cli("prove", "problems/p1.gdd", "--format", "latex")
    assert r.returncode == 0
    assert r.stdout.startswith("\\documentclass{article}")


def test_rules_flag_overrides_includes(tmp_path):
    # a rule set without the midline rule cannot prove p1
    from gddp import parse_rules, render_rules

    rs = parse_rules(RULES_FILE.read_text())
    rs.rules = [r for r in rs.rules if r.name != "midline"]
    rs.templates.pop("midline", None)
    stripped = tmp_path / "weak.rules"
    stripped.write_text(render_rules(rs))
    r = run_cli("prove", "problems/p1.gdd", "--rules", str(stripped))
    assert r.returncode == 1


def test_rules_dir_environment_override(tmp_path):
    rules_dir = tmp_path / "rules"
    rules_dir.mkdir()
    (rules_dir / "gdd.rules").write_text(RULES_FILE.read_text())
    prob = tmp_path / "p.gdd"
    prob.write_text(corpus_path("p1.gdd").read_text())
    r = run_cli("prove", str(prob), env_extra={"GDDP_RULES_DIR": str(rules_dir)})
    assert r.returncode == 0


def test_include_resolves_relative_to_problem_file(tmp_path):
    (tmp_path / "local.rules").write_text(RULES_FILE.read_text())
    prob = tmp_path / "p.gdd"
    prob.write_text(
        corpus_path("p1.gdd").read_text().replace("include gdd.rules", "include local.rules")
    )
    r = run_cli("prove", str(prob))
    assert r.returncode == 0


def test_timeout_flag_limits_work():
    r = run_cli("prove", "problems/p3.gdd", "--timeout", "0.0001")
    assert r.returncode == 2
    assert "resource limit" in r.stdout
