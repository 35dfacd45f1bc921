"""Quantum draws with classical number guesses, two players with one coin.

Draws come from the reduced operator set O1..O4; the round's joint hand
state is O_{d2} O_{d1} |0⟩ and the called total is checked against one
projective measurement of the total coin number.  All distributions here
are exact rationals obtained from the Fock-algebra Born rule.

The headline quantities are the 4x4 outcome grid, its row averages against
a mixing opponent, and the first caller's success probability when guessing
optimally draw-by-draw:

* random draws on both sides give 53/112 < 1/2 (the first caller loses
  ground), while restricting to the classical draws {O1, O4} against the
  same opponent restores 13/24 > 1/2 - the random-draw profile is unstable;
* both sides on classical draws returns the even 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import solver
from .fock import born_distribution, pair_state

DRAW_INDICES = (1, 2, 3, 4)
TOTALS = (0, 1, 2)

Distribution = tuple[Fraction, Fraction, Fraction]


def _check_index(i: int) -> int:
    if i not in DRAW_INDICES:
        raise ValueError(f"draw index must be one of {DRAW_INDICES}, got {i}")
    return i


def _check_mix(mix: Sequence[Fraction]) -> tuple[Fraction, ...]:
    mix = tuple(Fraction(m) for m in mix)
    if len(mix) != 4:
        raise ValueError("draw mix must have 4 entries (O1..O4)")
    if any(m < 0 for m in mix):
        raise ValueError("negative mix weight")
    if sum(mix) != 1:
        raise ValueError(f"mix sums to {sum(mix)}, expected 1")
    return mix


def uniform_mix() -> tuple[Fraction, ...]:
    return (Fraction(1, 4),) * 4


def classical_mix() -> tuple[Fraction, ...]:
    """Even mixture of the classical draws O1 and O4."""
    return (Fraction(1, 2), Fraction(0), Fraction(0), Fraction(1, 2))


@lru_cache(maxsize=None)
def joint_distribution(d1: int, d2: int) -> Distribution:
    """Measured-total distribution over {0, 1, 2} for a pair of draws."""
    _check_index(d1)
    _check_index(d2)
    probs = born_distribution(pair_state(d1, d2))
    padded = list(probs) + [type(probs[0])(0)] * (3 - len(probs))
    return tuple(p.as_fraction() for p in padded)


def outcome_table() -> dict[tuple[int, int], Distribution]:
    """Full 4x4 grid of joint distributions (symmetric under transposition)."""
    return {(i, j): joint_distribution(i, j) for i in DRAW_INDICES for j in DRAW_INDICES}


def averaged_distribution(own: int, opponent_mix: Sequence[Fraction]) -> Distribution:
    """Outcome distribution seen by one player against a mixing opponent."""
    _check_index(own)
    mix = _check_mix(opponent_mix)
    acc = [Fraction(0)] * 3
    for j, w in zip(DRAW_INDICES, mix):
        if not w:
            continue
        for n, p in enumerate(joint_distribution(own, j)):
            acc[n] += w * p
    return tuple(acc)


def averaged_table(opponent_mix: Sequence[Fraction] | None = None) -> dict[int, Distribution]:
    """Per-draw averaged distributions; defaults to a uniform opponent."""
    mix = uniform_mix() if opponent_mix is None else opponent_mix
    return {i: averaged_distribution(i, mix) for i in DRAW_INDICES}


@dataclass(frozen=True)
class BestGuess:
    guess: int
    win_prob: Fraction
    tied_alternatives: frozenset[int]


def best_guess(own: int, opponent_mix: Sequence[Fraction]) -> BestGuess:
    """Most likely total given own draw and the opponent's mix.

    Ties are surfaced; the canonical pick is the smallest tied total so
    repeated analyses stay deterministic (callers may randomize over
    ``tied_alternatives`` themselves).
    """
    dist = averaged_distribution(own, opponent_mix)
    top = max(dist)
    tied = frozenset(n for n, p in enumerate(dist) if p == top)
    return BestGuess(min(tied), top, tied)


def strategy_payoff_p1(
    draw_mix: Sequence[Fraction], opponent_mix: Sequence[Fraction]
) -> Fraction:
    """First-guess success probability: the chance the first caller's
    optimal per-draw guess matches the measured total.

    This is a guessing probability, not the normalized win share of the
    classical analysis; the two coincide only in symmetric situations.
    """
    mix = _check_mix(draw_mix)
    return sum(
        (w * best_guess(d, opponent_mix).win_prob for d, w in zip(DRAW_INDICES, mix)),
        Fraction(0),
    )


def draw_matrix_game() -> solver.MatrixGame:
    """Draw-stage game with the first caller's guessing rule frozen.

    u1[d1][d2] = P(total = canonical best guess for d1 against a uniform
    opponent); zero-sum.  Best-response dynamics on this game abandon the
    superposition draws and cycle inside {O1, O4} x {O1, O4}, the
    matching-pennies block of the classical draws.
    """
    fixed_guess = {d: best_guess(d, uniform_mix()).guess for d in DRAW_INDICES}
    u1 = tuple(
        tuple(joint_distribution(d1, d2)[fixed_guess[d1]] for d2 in DRAW_INDICES)
        for d1 in DRAW_INDICES
    )
    labels = tuple(f"O{i}" for i in DRAW_INDICES)
    return solver.MatrixGame(labels, labels, u1, solver.negate(u1))
