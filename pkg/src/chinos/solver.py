"""Finite two-player matrix games: exact expected payoffs, best responses,
pure equilibria, and a fictitious-play approximator.

Payoffs may be Fractions (analysis path: comparisons are exact and ties are
reported, never broken silently) or floats.  There is deliberately no
general mixed-equilibrium solver; the stability arguments this package
makes need only best responses, pure-equilibrium checks, and guaranteed
values, all of which are computable exactly.  Fictitious play is a clearly
labeled approximator for exploration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .scalars import format_rational, parse_rational

Row = tuple
Grid = tuple


def negate(grid: Sequence[Sequence]) -> Grid:
    return tuple(tuple(-x for x in row) for row in grid)


@dataclass(frozen=True)
class MatrixGame:
    actions1: tuple[str, ...]
    actions2: tuple[str, ...]
    u1: Grid
    u2: Grid

    def __post_init__(self) -> None:
        m, n = len(self.actions1), len(self.actions2)
        if m == 0 or n == 0:
            raise ValueError("both players need at least one action")
        for grid in (self.u1, self.u2):
            if len(grid) != m or any(len(row) != n for row in grid):
                raise ValueError("payoff grid dimensions must match action labels")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.actions1), len(self.actions2)


def _check_mix(mix: Sequence, size: int) -> tuple:
    mix = tuple(mix)
    if len(mix) != size:
        raise ValueError(f"mix has {len(mix)} entries, expected {size}")
    if any(m < 0 for m in mix):
        raise ValueError("negative mix weight")
    total = sum(mix)
    exact = all(isinstance(m, (int, Fraction)) for m in mix)
    if (exact and total != 1) or (not exact and abs(total - 1) > 1e-9):
        raise ValueError(f"mix sums to {total}, expected 1")
    return mix


def expected_payoff(game: MatrixGame, mix1: Sequence, mix2: Sequence) -> tuple:
    """(v1, v2) = (mix1ᵀ U1 mix2, mix1ᵀ U2 mix2)."""
    m, n = game.shape
    mix1 = _check_mix(mix1, m)
    mix2 = _check_mix(mix2, n)
    values = []
    for grid in (game.u1, game.u2):
        acc = 0
        for i, w1 in enumerate(mix1):
            if not w1:
                continue
            for j, w2 in enumerate(mix2):
                if w2:
                    acc += w1 * w2 * grid[i][j]
        values.append(acc)
    return tuple(values)


def best_responses(game: MatrixGame, opponent_mix: Sequence, player: int) -> tuple[int, ...]:
    """All actions attaining the maximal expected payoff (exact ties kept)."""
    m, n = game.shape
    if player == 1:
        mix = _check_mix(opponent_mix, n)
        payoffs = [
            sum(w * game.u1[i][j] for j, w in enumerate(mix) if w) for i in range(m)
        ]
    elif player == 2:
        mix = _check_mix(opponent_mix, m)
        payoffs = [
            sum(w * game.u2[i][j] for i, w in enumerate(mix) if w) for j in range(n)
        ]
    else:
        raise ValueError("player must be 1 or 2")
    top = max(payoffs)
    return tuple(i for i, v in enumerate(payoffs) if v == top)


def pure_equilibria(game: MatrixGame) -> list[tuple[int, int]]:
    """All cells where each action is a best response to the other."""
    m, n = game.shape
    col_max = [max(game.u1[i][j] for i in range(m)) for j in range(n)]
    row_max = [max(game.u2[i][j] for j in range(n)) for i in range(m)]
    return [
        (i, j)
        for i in range(m)
        for j in range(n)
        if game.u1[i][j] == col_max[j] and game.u2[i][j] == row_max[i]
    ]


@dataclass(frozen=True)
class FictitiousPlayResult:
    mix1: tuple[Fraction, ...]
    mix2: tuple[Fraction, ...]
    converged: bool
    iterations: int


def _integer_grid(grid: Grid) -> Grid:
    """Scale a rational grid to integers so the inner loop is int-only."""
    denoms = [x.denominator for row in grid for x in row]
    scale = lcm(*denoms) if denoms else 1
    return tuple(tuple(int(x * scale) for x in row) for row in grid)


def fictitious_play(
    game: MatrixGame, max_iters: int, tolerance: float
) -> FictitiousPlayResult:
    """Empirical-frequency best-response iteration.

    Deterministic: the initial move is the best response to a uniform
    opponent and ties always resolve to the lowest action index.  Converged
    means successive empirical mixes moved less than ``tolerance`` in
    max-norm; non-convergence is reported through the flag, never raised.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    m, n = game.shape
    exact = all(
        isinstance(x, (int, Fraction)) for grid in (game.u1, game.u2) for row in grid for x in row
    )
    u1 = _integer_grid(tuple(tuple(Fraction(x) for x in r) for r in game.u1)) if exact else game.u1
    u2 = _integer_grid(tuple(tuple(Fraction(x) for x in r) for r in game.u2)) if exact else game.u2

    counts1 = [0] * m
    counts2 = [0] * n
    # round 0: respond to a uniform prior
    a1 = max(range(m), key=lambda i: (sum(u1[i]), -i))
    a2 = max(range(n), key=lambda j: (sum(u2[i][j] for i in range(m)), -j))
    counts1[a1] += 1
    counts2[a2] += 1

    converged = False
    iterations = 1
    for t in range(1, max_iters):
        a1 = max(range(m), key=lambda i: (sum(u1[i][j] * c for j, c in enumerate(counts2) if c), -i))
        a2 = max(range(n), key=lambda j: (sum(u2[i][j] * c for i, c in enumerate(counts1) if c), -j))
        # empirical-frequency movement from t to t+1 plays
        delta = max(
            max(abs(c * 1.0 / t - (c + (1 if i == a1 else 0)) / (t + 1)) for i, c in enumerate(counts1)),
            max(abs(c * 1.0 / t - (c + (1 if j == a2 else 0)) / (t + 1)) for j, c in enumerate(counts2)),
        )
        counts1[a1] += 1
        counts2[a2] += 1
        iterations = t + 1
        if delta < tolerance:
            converged = True
            break
    total = iterations
    return FictitiousPlayResult(
        tuple(Fraction(c, total) for c in counts1),
        tuple(Fraction(c, total) for c in counts2),
        converged,
        iterations,
    )


def best_response_dynamics(
    game: MatrixGame, start: tuple[int, int], steps: int
) -> list[tuple[int, int]]:
    """Alternating exact pure best responses; the oracle for fictitious-play
    claims on small games.  Ties resolve to the lowest index."""
    profile = start
    path = [profile]
    for _ in range(steps):
        i = best_responses(game, _point(profile[1], game.shape[1]), player=1)[0]
        j = best_responses(game, _point(profile[0], game.shape[0]), player=2)[0]
        profile = (i, j)
        path.append(profile)
    return path


def _point(index: int, size: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if i == index else Fraction(0) for i in range(size))


# -- JSON interchange -----------------------------------------------------------


def _cell_to_json(x):
    if isinstance(x, (int, Fraction)):
        return format_rational(Fraction(x))
    return float(x)


def _cell_from_json(x):
    if isinstance(x, str):
        return parse_rational(x)
    return float(x)


def game_to_json(game: MatrixGame) -> dict:
    return {
        "actions1": list(game.actions1),
        "actions2": list(game.actions2),
        "U1": [[_cell_to_json(x) for x in row] for row in game.u1],
        "U2": [[_cell_to_json(x) for x in row] for row in game.u2],
    }


def game_from_json(payload: dict) -> MatrixGame:
    return MatrixGame(
        tuple(payload["actions1"]),
        tuple(payload["actions2"]),
        tuple(tuple(_cell_from_json(x) for x in row) for row in payload["U1"]),
        tuple(tuple(_cell_from_json(x) for x in row) for row in payload["U2"]),
    )


def load_game(path: str) -> MatrixGame:
    with open(path, "r", encoding="utf-8") as fh:
        return game_from_json(json.load(fh))
