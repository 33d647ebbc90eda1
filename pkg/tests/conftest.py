import sys
from pathlib import Path

import pytest

from gddp.cli import load_problem, load_rules_for

REPO = Path(__file__).resolve().parent.parent
PROBLEMS = REPO / "problems"
RULES_FILE = REPO / "src" / "gddp" / "rules" / "gdd.rules"

CORPUS = ["p1.gdd", "p2.gdd", "p3.gdd", "p4.gdd"]
CORPUS_ALL = CORPUS + ["p1.p", "p3.p"]


def corpus_path(name: str) -> Path:
    return PROBLEMS / name


def load(name: str):
    path = corpus_path(name)
    problem = load_problem(str(path))
    rules = load_rules_for(problem, str(path), None)
    return problem, rules


@pytest.fixture(scope="session")
def default_rules():
    from gddp import parse_rules

    return parse_rules(RULES_FILE.read_text())


@pytest.fixture(scope="session")
def p1():
    return load("p1.gdd")


@pytest.fixture(scope="session")
def p3():
    return load("p3.gdd")


@pytest.fixture(scope="session")
def python_cmd():
    return [sys.executable, "-m", "gddp"]
