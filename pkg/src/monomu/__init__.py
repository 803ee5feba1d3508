"""Monotone modal mu-calculus on neighborhood models.

Subpackages and modules:

- ``monomu.syntax``: formulas of the mu-calculus and of neighborhood MSO
- ``monomu.model``: neighborhood models, Kripke conversion, documents
- ``monomu.denotation``: fixpoint semantics and brute-force MSO evaluation
- ``monomu.game``: evaluation games and a parity-game solver
- ``monomu.bisim``: bisimulations and global bisimulations
- ``monomu.translate``: the MSO translation and global-modality elimination
- ``monomu.properties``: seeded property suites
"""

from monomu.bisim import Relation, bisimilar, globally_bisimilar, greatest_bisimulation, is_bisimulation
from monomu.denotation import approximants, eval_mu, eval_nmso, nmso_extension
from monomu.errors import GuardError, ModelError, ParseError
from monomu.game import Player, build_arena, solve, verify_strategy, winning, winning_states
from monomu.model import (
    KripkeModel,
    NeighborhoodModel,
    PointedModel,
    disjoint_union,
    enumerate_models,
    from_kripke,
    random_model,
    read_model,
    to_kripke,
    write_model,
)
from monomu.syntax import parse_mu, parse_nmso, print_mu, print_nmso
from monomu.translate import build_universe, eliminate_global, invariance_probe, main_lemma_check, to_nmso

__version__ = "0.1.0"

__all__ = [
    "GuardError", "KripkeModel", "ModelError", "NeighborhoodModel", "ParseError", "Player",
    "PointedModel", "Relation", "approximants", "bisimilar", "build_arena", "build_universe",
    "disjoint_union", "eliminate_global", "enumerate_models", "eval_mu", "eval_nmso",
    "from_kripke", "globally_bisimilar", "greatest_bisimulation", "invariance_probe",
    "is_bisimulation", "main_lemma_check", "nmso_extension", "parse_mu", "parse_nmso",
    "print_mu", "print_nmso", "random_model", "read_model", "solve", "to_kripke",
    "to_nmso", "verify_strategy", "winning", "winning_states", "write_model",
]
