"""gddp: a forward-chaining deductive-database prover for plane geometry.

Facts over symbolic points are closed under a geometric rule set until no
new fact appears; conjectures can also be checked numerically on exact
rational models, proofs extracted and rendered, and an all-proofs graph
queried for next-step hints.
"""

from .engine import Limits, ProofResult, SaturationResult, apply_rule, prove, saturate
from .errors import (
    GddpError,
    MalformedFactError,
    NoProofError,
    NonCanonicalFactError,
    ParseError,
    RealizationError,
    UnsupportedFormatError,
)
from .facts import Fact, FactBase, Derivation, Pattern, canonicalize, make_fact
from .hints import DeductionGraph, Hint, build_graph, count_proofs, next_steps
from .numeric import CheckReport, NumericModel, check_conjecture, eval_fact, realize
from .parser import (
    Constructor,
    Problem,
    Rule,
    RuleSet,
    parse_problem,
    parse_rules,
    render_problem,
    render_rules,
)
from .proof import ProofStats, ProofTree, extract_proof, proof_stats, render_proof, replay_proof

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "Constructor",
    "DeductionGraph",
    "Derivation",
    "Fact",
    "FactBase",
    "GddpError",
    "Hint",
    "Limits",
    "MalformedFactError",
    "NoProofError",
    "NonCanonicalFactError",
    "NumericModel",
    "ParseError",
    "Pattern",
    "Problem",
    "ProofResult",
    "ProofStats",
    "ProofTree",
    "RealizationError",
    "Rule",
    "RuleSet",
    "SaturationResult",
    "UnsupportedFormatError",
    "apply_rule",
    "build_graph",
    "canonicalize",
    "check_conjecture",
    "count_proofs",
    "eval_fact",
    "extract_proof",
    "make_fact",
    "next_steps",
    "parse_problem",
    "parse_rules",
    "proof_stats",
    "prove",
    "realize",
    "render_problem",
    "render_proof",
    "render_rules",
    "replay_proof",
    "saturate",
]
