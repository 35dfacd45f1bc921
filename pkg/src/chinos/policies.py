"""Engine policies for live sessions.

Each policy answers the current draw or guess phase for its seat, drawing
any randomness from the session's own RNG stream (so replays stay
deterministic).  Available policies:

``random-classical``
    Classical variant.  Uniform draws.  Seat 1 always calls N_c - the call
    leaks nothing about the hidden draw and remains consistent with every
    one; seat 2 answers uniformly over the untaken totals.
``scg-best-guess``
    Semiclassical variant.  Uniform draws over O1..O4; calls the most
    likely total given the own draw against a uniform opponent, seat 2
    restricted to untaken totals.  Ties break to the smallest total.
``qcg-paper``
    Quantum variant.  Draws O2/O3 on a fair coin; seat 1 always guesses the
    doubled own draw ((2,2) after O2, (3,3) after O3), which guarantees
    expected gain 11/21 regardless of the opponent's draws.  Seated second
    (not covered by the strategy's own analysis) it falls back to the
    best-response guessing rule below.
``qcg-best-response``
    Quantum variant.  Draws O2/O3 on a fair coin (the exhaustive analysis's
    reply that pins the first caller to the guaranteed 11/21); guesses the
    admissible pair maximizing the expected own gain with the unseen
    opponent draw taken uniform, ties to the lexicographically smallest
    pair.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING

from . import quantum, semiclassical
from .classical import draw_space, guess_space

if TYPE_CHECKING:
    from .session import GameSession

from .session import InvalidMoveError, OutOfTurnError, Phase, SessionError


class UnknownPolicyError(SessionError):
    pass


def _coin_flip_draw(session) -> int:
    """O2 or O3, equiprobable from the session stream (one 32-bit word)."""
    return 2 + session.rng.randbelow(2)


def _uniform_choice(session, options: list):
    return options[session.rng.randbelow(len(options))]


def _expected_gain(pair, own_draw: int, opponent_draws) -> Fraction:
    total = Fraction(0)
    for d in opponent_draws:
        total += quantum.gain(pair, d, own_draw)
    return total / len(opponent_draws)


class _RandomClassical:
    variants = ("classical",)

    def draw(self, session, seat: int) -> int:
        return session.rng.randbelow(session.n_coins + 1)

    def guess(self, session, seat: int) -> int:
        if seat == 1:
            return session.n_coins
        allowed = [g for g in guess_space(session.n_coins) if g != session.guesses[1]]
        return _uniform_choice(session, allowed)


class _ScgBestGuess:
    variants = ("semiclassical",)

    def draw(self, session, seat: int) -> int:
        return 1 + session.rng.randbelow(4)

    def guess(self, session, seat: int) -> int:
        own = session.hidden_draws[seat]
        dist = semiclassical.averaged_distribution(own, semiclassical.uniform_mix())
        taken = session.guesses[1] if seat == 2 else None
        candidates = [g for g in range(3) if g != taken]
        best = max(dist[g] for g in candidates)
        return min(g for g in candidates if dist[g] == best)


class _QcgBestResponse:
    variants = ("quantum",)

    def draw(self, session, seat: int) -> int:
        return _coin_flip_draw(session)

    def guess(self, session, seat: int):
        own = session.hidden_draws[seat]
        if seat == 1:
            candidates = list(quantum.FIRST_CALLER_PAIRS)
        else:
            candidates = sorted(quantum.admissible_guesses([session.guesses[1]]))
            if not candidates:  # cannot happen for the reduced set; guard anyway
                raise InvalidMoveError("no admissible guess remains")
        gains = {pair: _expected_gain(pair, own, (1, 2, 3, 4)) for pair in candidates}
        best = max(gains.values())
        return min(p for p, v in gains.items() if v == best)


class _QcgPaper(_QcgBestResponse):
    variants = ("quantum",)

    def guess(self, session, seat: int):
        if seat == 1:
            return quantum.WINNING_GUESS.get(session.hidden_draws[1]) or super().guess(
                session, seat
            )
        return super().guess(session, seat)


POLICIES = {
    "random-classical": _RandomClassical(),
    "scg-best-guess": _ScgBestGuess(),
    "qcg-paper": _QcgPaper(),
    "qcg-best-response": _QcgBestResponse(),
}


def check_policy(name: str | None, variant: str) -> None:
    if name not in POLICIES:
        raise UnknownPolicyError(
            f"unknown policy {name!r}; available: {sorted(POLICIES)}"
        )
    if variant not in POLICIES[name].variants:
        raise UnknownPolicyError(f"policy {name!r} does not play the {variant} variant")


def engine_move(session: "GameSession", policy_name: str | None = None):
    """Compute (without applying) the move for the seat whose turn it is.

    ``policy_name`` defaults to the policy configured for that seat.
    """
    seat = session.to_move()
    if seat is None:
        raise OutOfTurnError(f"no move expected during phase {session.phase.value}")
    if policy_name is None:
        cfg = session.players[seat - 1]
        if cfg.kind != "engine":
            raise OutOfTurnError(f"seat {seat} is not an engine seat")
        policy_name = cfg.policy
    check_policy(policy_name, session.variant)
    policy = POLICIES[policy_name]
    if session.phase in (Phase.DRAW1, Phase.DRAW2):
        return policy.draw(session, seat)
    return policy.guess(session, seat)


def auto_play(session: "GameSession") -> None:
    """Let engine seats move until a human must act or the round resolves."""
    while not session.finished:
        seat = session.to_move()
        if seat is None or session.players[seat - 1].kind != "engine":
            return
        move = engine_move(session)
        if session.phase in (Phase.DRAW1, Phase.DRAW2):
            session.submit_draw(seat, move)
        else:
            session.submit_guess(seat, move)
