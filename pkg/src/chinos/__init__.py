"""Chinos guessing game: exact engine, analysis toolchain, and play service.

Layers, bottom up:

* :mod:`chinos.scalars` / :mod:`chinos.fock` - exact Q(√2) arithmetic and
  the creation-operator state algebra (Born rule, overlaps, fidelities);
* :mod:`chinos.classical`, :mod:`chinos.semiclassical`,
  :mod:`chinos.quantum` - the three game variants and their analyses;
* :mod:`chinos.solver` - generic finite two-player game tools;
* :mod:`chinos.session` / :mod:`chinos.policies` - live turn-based play
  with deterministic replay and engine opponents;
* :mod:`chinos.cli` / :mod:`chinos.service` - command line and HTTP front
  doors.
"""

from .fock import (
    DrawOperator,
    FockPoly,
    VACUUM,
    apply_draw,
    bloch_operator,
    born_distribution,
    fidelity,
    norm_squared,
    overlap,
    pair_state,
    reduced_operator,
)
from .scalars import QuadScalar, Rational, format_rational, parse_rational
from .session import GameSession, create_session, replay_log

__version__ = "0.1.0"

__all__ = [
    "DrawOperator",
    "FockPoly",
    "GameSession",
    "QuadScalar",
    "Rational",
    "VACUUM",
    "apply_draw",
    "bloch_operator",
    "born_distribution",
    "create_session",
    "fidelity",
    "format_rational",
    "norm_squared",
    "overlap",
    "pair_state",
    "parse_rational",
    "reduced_operator",
    "replay_log",
    "__version__",
]
