"""Fully quantum game: operator-pair guesses, Gram metric, orthogonality
constraint, fidelity payoffs, and the exhaustive stability analysis.

A guess is a claim about the round's joint hand state, expressed as an
ordered operator pair (j, k) standing for O_j O_k |0⟩.  The first caller
picks from the 10 pairs with j ≤ k; later callers must be exactly
orthogonal to every earlier guess state.  The gain for a player is the
fidelity between their claimed state and the actual joint state.

The headline result: drawing O2/O3 on a fair coin and always guessing the
doubled own draw ((2,2) after O2, (3,3) after O3) guarantees the first
caller an expected gain of 11/21 > 1/2 no matter how the opponent mixes
draws - the classical evenness between the seats is broken.

All products of the reduced set give coefficient vectors homogeneous in the
√2-grading, so squared overlaps, squared norms, and fidelities are plain
rationals even though amplitudes live in Q(√2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .fock import FockPoly, fidelity, norm_squared, overlap, pair_state
from .scalars import QuadScalar, as_float, format_rational

Pair = tuple[int, int]

ORDERED_PAIRS: tuple[Pair, ...] = tuple(
    (j, k) for j in (1, 2, 3, 4) for k in (1, 2, 3, 4)
)
FIRST_CALLER_PAIRS: tuple[Pair, ...] = tuple((j, k) for j, k in ORDERED_PAIRS if j <= k)

# The guaranteed-edge strategy: fair coin over the superposition draws,
# guess always the doubled own draw.
WINNING_DRAW_MIX: dict[int, Fraction] = {2: Fraction(1, 2), 3: Fraction(1, 2)}
WINNING_GUESS: dict[int, Pair] = {2: (2, 2), 3: (3, 3)}


@dataclass(frozen=True)
class QuantumGuess:
    """An ordered operator pair with its (unnormalized) state."""

    j: int
    k: int
    state: FockPoly
    norm_sq: Fraction

    @property
    def pair(self) -> Pair:
        return (self.j, self.k)


def _check_pair(pair: Pair) -> Pair:
    j, k = pair
    if j not in (1, 2, 3, 4) or k not in (1, 2, 3, 4):
        raise ValueError(f"operator indices must be 1..4, got {pair}")
    return (j, k)


@lru_cache(maxsize=None)
def quantum_guess(j: int, k: int) -> QuantumGuess:
    _check_pair((j, k))
    state = pair_state(j, k)
    return QuantumGuess(j, k, state, norm_squared(state).as_fraction())


def _as_guess(g) -> QuantumGuess:
    if isinstance(g, QuantumGuess):
        return g
    return quantum_guess(*_check_pair(tuple(g)))


@dataclass(frozen=True)
class GramMetric:
    """Normalized overlaps between all 16 ordered pair states.

    Exactness: the raw overlap and the squared magnitude |G|² are stored
    exactly (the normalizing square roots would leave Q(√2)); the signed
    float rendering is derived.  Products commute, so only 10 of the 16
    states are distinct - deduplication is left to reports, the metric
    keeps the full ordered grid.
    """

    pairs: tuple[Pair, ...]
    overlaps: dict[tuple[Pair, Pair], QuadScalar]
    norm_sq: dict[Pair, Fraction]

    def overlap_sq(self, p1: Pair, p2: Pair) -> Fraction:
        ov = self.overlaps[(_check_pair(p1), _check_pair(p2))]
        return (ov * ov).as_fraction() / (self.norm_sq[p1] * self.norm_sq[p2])

    def is_orthogonal(self, p1: Pair, p2: Pair) -> bool:
        return not self.overlaps[(_check_pair(p1), _check_pair(p2))]

    def entry_float(self, p1: Pair, p2: Pair) -> float:
        sign = self.overlaps[(p1, p2)].sign()
        return sign * float(self.overlap_sq(p1, p2)) ** 0.5

    def to_json(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "entries": [
                {
                    "row": list(p1),
                    "col": list(p2),
                    "overlap_sq": format_rational(self.overlap_sq(p1, p2)),
                    "value_float": self.entry_float(p1, p2),
                    "orthogonal": self.is_orthogonal(p1, p2),
                }
                for p1 in self.pairs
                for p2 in self.pairs
            ],
        }


@lru_cache(maxsize=None)
def gram_metric() -> GramMetric:
    overlaps = {}
    norms = {}
    for p1 in ORDERED_PAIRS:
        norms[p1] = quantum_guess(*p1).norm_sq
        for p2 in ORDERED_PAIRS:
            ov = overlap(quantum_guess(*p1).state, quantum_guess(*p2).state)
            overlaps[(p1, p2)] = ov if isinstance(ov, QuadScalar) else QuadScalar(ov)
    return GramMetric(ORDERED_PAIRS, overlaps, norms)


def admissible_guesses(prior: Iterable) -> frozenset[Pair]:
    """All ordered pairs exactly orthogonal to every prior guess state."""
    prior = [_as_guess(g) for g in prior]
    if not prior:
        raise ValueError("need at least one prior guess")
    metric = gram_metric()
    return frozenset(
        p for p in ORDERED_PAIRS if all(metric.is_orthogonal(p, g.pair) for g in prior)
    )


def joint_state(d1: int, d2: int) -> FockPoly:
    return pair_state(d1, d2)


@lru_cache(maxsize=None)
def _gain(j: int, k: int, d1: int, d2: int) -> Fraction:
    return fidelity(quantum_guess(j, k).state, joint_state(d1, d2)).as_fraction()


def gain(guess, d1: int, d2: int) -> Fraction:
    """Fidelity payoff of a guess against the joint state of (d1, d2)."""
    g = _as_guess(guess)
    return _gain(g.j, g.k, d1, d2)


def payoff_table_for_guess(guess, draw1: int) -> dict[int, Fraction]:
    """First caller's gain per opponent draw, own draw and guess fixed."""
    return {d2: gain(guess, draw1, d2) for d2 in (1, 2, 3, 4)}


def winning_strategy_gain_by_draw() -> dict[int, Fraction]:
    """Expected first-caller gain per opponent draw under the edge strategy
    (averaging over the fair O2/O3 coin)."""
    return {
        d2: sum(
            (w * gain(WINNING_GUESS[d1], d1, d2) for d1, w in WINNING_DRAW_MIX.items()),
            Fraction(0),
        )
        for d2 in (1, 2, 3, 4)
    }


def winning_strategy_payoff(opponent_mix: Sequence[Fraction] | None = None) -> Fraction:
    """Expected gain of the edge strategy against an opponent draw mix.

    Defaults to the opponent's own best reply, the even O2/O3 mix, where
    the value is exactly 11/21.
    """
    if opponent_mix is None:
        mix = (Fraction(0), Fraction(1, 2), Fraction(1, 2), Fraction(0))
    else:
        mix = tuple(Fraction(m) for m in opponent_mix)
        if len(mix) != 4 or any(m < 0 for m in mix) or sum(mix) != 1:
            raise ValueError("opponent mix must be 4 nonnegative weights summing to 1")
    by_draw = winning_strategy_gain_by_draw()
    return sum((w * by_draw[d2] for d2, w in zip((1, 2, 3, 4), mix)), Fraction(0))


# -- exhaustive analysis --------------------------------------------------------


@dataclass(frozen=True)
class ProfileOutcome:
    draw1: int
    guess1: Pair
    draw2: int
    guess2: Pair
    f1: Fraction
    f2: Fraction


@dataclass(frozen=True)
class ResponderBestReply:
    """Second caller's options against one pure first-caller strategy."""

    draw1: int
    guess1: Pair
    f1_by_draw2: dict[int, Fraction]
    f1_minimizing_draws: frozenset[int]
    f2_best: Fraction
    f2_best_replies: tuple[tuple[int, Pair], ...]


@dataclass(frozen=True)
class ExhaustiveReport:
    profiles: tuple[ProfileOutcome, ...]
    edge_gain_by_opponent_draw: dict[int, Fraction]
    edge_minimizing_draws: frozenset[int]
    guaranteed_value: Fraction
    responder_replies: dict[tuple[int, Pair], ResponderBestReply]
    first_caller_best_vs_uniform: tuple[tuple[tuple[int, Pair], ...], Fraction]
    symmetry_broken: bool

    def to_json(self, include_profiles: bool = False) -> dict:
        strategies, value = self.first_caller_best_vs_uniform
        payload = {
            "guaranteed_value": format_rational(self.guaranteed_value),
            "guaranteed_value_float": float(self.guaranteed_value),
            "edge_strategy": {
                "draw_mix": {f"O{d}": format_rational(w) for d, w in WINNING_DRAW_MIX.items()},
                "guess_by_draw": {f"O{d}": list(p) for d, p in WINNING_GUESS.items()},
                "expected_f1_by_opponent_draw": {
                    f"O{d}": format_rational(v)
                    for d, v in sorted(self.edge_gain_by_opponent_draw.items())
                },
                "f1_minimizing_draws": sorted(f"O{d}" for d in self.edge_minimizing_draws),
            },
            "first_caller_best_vs_uniform": {
                "strategies": [
                    {"draw": f"O{d}", "guess": list(p)} for d, p in strategies
                ],
                "value": format_rational(value),
                "value_float": float(value),
            },
            "responder_best_replies": [
                {
                    "draw1": f"O{r.draw1}",
                    "guess1": list(r.guess1),
                    "f1_by_draw2": {
                        f"O{d}": format_rational(v) for d, v in sorted(r.f1_by_draw2.items())
                    },
                    "f1_minimizing_draws": sorted(f"O{d}" for d in r.f1_minimizing_draws),
                    "f2_best": format_rational(r.f2_best),
                    "f2_best_replies": [
                        {"draw": f"O{d}", "guess": list(p)} for d, p in r.f2_best_replies
                    ],
                }
                for r in self.responder_replies.values()
            ],
            "symmetry_broken": self.symmetry_broken,
        }
        if include_profiles:
            payload["profiles"] = [
                {
                    "draw1": p.draw1,
                    "guess1": list(p.guess1),
                    "draw2": p.draw2,
                    "guess2": list(p.guess2),
                    "f1": format_rational(p.f1),
                    "f2": format_rational(p.f2),
                }
                for p in self.profiles
            ]
        return payload


@lru_cache(maxsize=None)
def exhaustive_analysis() -> ExhaustiveReport:
    """Enumerate every pure profile and certify the first-caller edge.

    The guaranteed value is the minimum over opponent draw mixes of the
    edge strategy's expected gain; expectation is linear in the mix, so the
    minimum sits on a vertex and scanning the four pure draws is exact.
    """
    profiles: list[ProfileOutcome] = []
    responder: dict[tuple[int, Pair], ResponderBestReply] = {}
    for g1 in FIRST_CALLER_PAIRS:
        admissible = sorted(admissible_guesses([g1]))
        for d1 in (1, 2, 3, 4):
            f1_by_draw2 = payoff_table_for_guess(g1, d1)
            rows: list[ProfileOutcome] = []
            for d2 in (1, 2, 3, 4):
                for g2 in admissible:
                    rows.append(
                        ProfileOutcome(d1, g1, d2, g2, f1_by_draw2[d2], gain(g2, d1, d2))
                    )
            profiles.extend(rows)
            min_f1 = min(f1_by_draw2.values())
            best_f2 = max(r.f2 for r in rows) if rows else Fraction(0)
            responder[(d1, g1)] = ResponderBestReply(
                d1,
                g1,
                f1_by_draw2,
                frozenset(d for d, v in f1_by_draw2.items() if v == min_f1),
                best_f2,
                tuple((r.draw2, r.guess2) for r in rows if r.f2 == best_f2),
            )

    edge_by_draw = winning_strategy_gain_by_draw()
    guaranteed = min(edge_by_draw.values())
    minimizing = frozenset(d for d, v in edge_by_draw.items() if v == guaranteed)

    uniform = (Fraction(1, 4),) * 4
    best_value = Fraction(-1)
    best_strats: list[tuple[int, Pair]] = []
    for g1 in FIRST_CALLER_PAIRS:
        for d1 in (1, 2, 3, 4):
            value = sum(
                (w * v for w, v in zip(uniform, payoff_table_for_guess(g1, d1).values())),
                Fraction(0),
            )
            if value > best_value:
                best_value, best_strats = value, [(d1, g1)]
            elif value == best_value:
                best_strats.append((d1, g1))

    return ExhaustiveReport(
        tuple(profiles),
        edge_by_draw,
        minimizing,
        guaranteed,
        responder,
        (tuple(best_strats), best_value),
        guaranteed > Fraction(1, 2),
    )


def symmetry_verdict(report: ExhaustiveReport | None = None) -> str:
    """Human-readable closing statement for analysis output."""
    report = report or exhaustive_analysis()
    value = report.guaranteed_value
    if report.symmetry_broken:
        return (
            f"Seat symmetry broken: the first caller guarantees expected gain "
            f"{format_rational(value)} ≈ {as_float(value):.6f} > 1/2 against every "
            f"opponent draw mix; the classical player1 ↔ player2 evenness does not "
            f"survive quantum guessing."
        )
    return (
        f"Seat symmetry intact: best guaranteed expected gain is "
        f"{format_rational(value)} ≤ 1/2."
    )
