"""The classical two-player hidden-coin guessing game.

Each round both players hide d ∈ D = {0..N_c} coins and in turn call a
total g ∈ G = {0..2·N_c}; by default the second caller may not repeat the
first caller's number (guess exclusion).  A strategy is a draw distribution
plus a guess policy over information sets (own draw, guesses heard so far).

``exact_win_prob`` enumerates every draw pair and guess realization with
exact rationals; ``simulate_rounds`` is its Monte-Carlo cross-check on the
portable session RNG.

The guess-space reduction also admits a literal variant that removes PRIOR
DRAWS instead of prior guesses (``exclusion="draws"``).  Player 2 cannot
observe player 1's draw, so that rule is realized by conditioning player
2's announced distribution on the reduced space (renormalize; abstain if
all mass is excluded).  Left switchable for study; "guesses" is the rule
the game is actually played with.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Mapping

from .rng import Pcg32, cumulative_cutoffs
from .scalars import format_rational, parse_rational

Exclusion = Literal["guesses", "draws"]

GuessContext = tuple[int, tuple[int, ...]]  # (own draw, guesses heard so far)


def draw_space(n_coins: int) -> range:
    return range(n_coins + 1)


def guess_space(n_coins: int, n_players: int = 2) -> range:
    return range(n_players * n_coins + 1)


@dataclass
class ClassicalStrategy:
    """A per-round behavioral strategy for one seat."""

    n_coins: int
    draw_distribution: tuple[Fraction, ...]
    guess_policy: Mapping[GuessContext, Mapping[int, Fraction]]

    def validate(self, seat: int) -> None:
        nc = self.n_coins
        if nc < 1:
            raise ValueError("n_coins must be >= 1")
        if len(self.draw_distribution) != nc + 1:
            raise ValueError("draw distribution must cover D = {0..n_coins}")
        _check_distribution(self.draw_distribution)
        for (own, prior), dist in self.guess_policy.items():
            if own not in draw_space(nc):
                raise ValueError(f"policy context draw {own} outside D")
            if len(prior) != seat - 1:
                raise ValueError(
                    f"seat {seat} hears {seat - 1} prior guesses, context has {len(prior)}"
                )
            _check_distribution(tuple(dist.values()))
            for g in dist:
                if g not in guess_space(nc):
                    raise ValueError(f"guess {g} outside G")
            if any(g in prior and dist[g] for g in dist):
                raise ValueError(f"policy assigns mass to an already-taken guess in {prior}")

    def guess_distribution(self, own: int, prior: tuple[int, ...]) -> Mapping[int, Fraction]:
        try:
            return self.guess_policy[(own, prior)]
        except KeyError:
            raise KeyError(
                f"strategy has no guess rule for draw={own}, prior guesses={prior}"
            ) from None


def _check_distribution(probs) -> None:
    total = Fraction(0)
    for p in probs:
        if p < 0:
            raise ValueError("negative probability")
        total += Fraction(p)
    if total != 1:
        raise ValueError(f"distribution sums to {total}, expected 1")


# -- closed-form relations ---------------------------------------------------


def _check_prob(p) -> Fraction:
    p = Fraction(p) if not isinstance(p, Fraction) else p
    if not 0 <= p <= 1:
        raise ValueError(f"probability {p} outside [0, 1]")
    return p


def p2_from_p1(p1, n_coins: int) -> Fraction:
    """Second caller's success probability (1 - p1)/N_c when the first
    caller leaks nothing and both draw at random."""
    p1 = _check_prob(p1)
    if n_coins < 1:
        raise ValueError("n_coins must be >= 1")
    return (1 - p1) / n_coins


def normalized_payoff_p2(p1, n_coins: int) -> Fraction:
    """P2 = (1 - p1)/(1 + p1(N_c - 1)); strictly decreasing in p1."""
    p1 = _check_prob(p1)
    if n_coins < 1:
        raise ValueError("n_coins must be >= 1")
    return (1 - p1) / (1 + p1 * (n_coins - 1))


# -- exact evaluation ---------------------------------------------------------


@dataclass(frozen=True)
class WinOdds:
    """Per-round success probabilities and their normalized shares.

    ``P1``/``P2`` are None in the degenerate no-winner-ever case
    (p1 = p2 = 0), flagged by ``decided``.
    """

    p1: Fraction
    p2: Fraction
    void: Fraction
    P1: Fraction | None
    P2: Fraction | None

    @property
    def decided(self) -> bool:
        return self.P1 is not None

    def to_json(self) -> dict:
        def num(x):
            return None if x is None else {"exact": format_rational(x), "float": float(x)}

        return {
            "p1": num(self.p1),
            "p2": num(self.p2),
            "void": num(self.void),
            "P1": num(self.P1),
            "P2": num(self.P2),
            "decided": self.decided,
        }


def _make_odds(p1: Fraction, p2: Fraction) -> WinOdds:
    total = p1 + p2
    if total == 0:
        return WinOdds(p1, p2, 1 - p1 - p2, None, None)
    return WinOdds(p1, p2, 1 - p1 - p2, p1 / total, p2 / total)


def _effective_p2_dist(
    strat2: ClassicalStrategy, d2: int, g1: int, d1: int, exclusion: Exclusion
) -> Mapping[int, Fraction]:
    dist = strat2.guess_distribution(d2, (g1,))
    if exclusion == "guesses":
        if any(q and g == g1 for g, q in dist.items()):
            raise ValueError(f"player 2 policy repeats the prior guess {g1}")
        return dist
    # Literal draw-exclusion: condition the announced distribution on G - {d1}.
    kept = {g: q for g, q in dist.items() if g != d1}
    total = sum(kept.values(), Fraction(0))
    if total == 0:
        return {}  # all mass excluded: the player abstains this round
    return {g: q / total for g, q in kept.items()}


def exact_win_prob(
    strat1: ClassicalStrategy,
    strat2: ClassicalStrategy,
    n_players: int = 2,
    n_coins: int | None = None,
    exclusion: Exclusion = "guesses",
) -> WinOdds:
    """Enumerate all draw pairs and guess realizations exactly."""
    if n_players != 2:
        raise ValueError("exact analysis is defined for 2 players")
    if strat1.n_coins != strat2.n_coins:
        raise ValueError("strategies disagree on n_coins")
    if n_coins is not None and n_coins != strat1.n_coins:
        raise ValueError("n_coins does not match the strategies")
    strat1.validate(seat=1)
    strat2.validate(seat=2)

    p1 = Fraction(0)
    p2 = Fraction(0)
    for d1, w1 in enumerate(strat1.draw_distribution):
        if not w1:
            continue
        for d2, w2 in enumerate(strat2.draw_distribution):
            if not w2:
                continue
            total = d1 + d2
            base = w1 * w2
            for g1, q1 in strat1.guess_distribution(d1, ()).items():
                if not q1:
                    continue
                if g1 == total:
                    p1 += base * q1
                dist2 = _effective_p2_dist(strat2, d2, g1, d1, exclusion)
                q2 = dist2.get(total, Fraction(0))
                if q2:
                    p2 += base * q1 * q2
    return _make_odds(p1, p2)


# -- Monte-Carlo cross-check ---------------------------------------------------


@dataclass(frozen=True)
class SimResult:
    wins1: int
    wins2: int
    draws_void: int

    def to_json(self) -> dict:
        return {"wins1": self.wins1, "wins2": self.wins2, "draws_void": self.draws_void}


class _Sampler:
    """Cutoff tables for one strategy; one RNG draw (2 steps) per sample."""

    def __init__(self, strat: ClassicalStrategy, seat: int) -> None:
        strat.validate(seat)
        self.draw_cutoffs = cumulative_cutoffs(list(strat.draw_distribution))
        self.guess_tables: dict[GuessContext, tuple[list[int], list[int]]] = {}
        for ctx, dist in strat.guess_policy.items():
            support = sorted(g for g, q in dist.items() if q)
            cutoffs = cumulative_cutoffs([dist[g] for g in support])
            self.guess_tables[ctx] = (support, cutoffs)

    def sample_draw(self, rng: Pcg32) -> int:
        return rng.weighted_index(self.draw_cutoffs)

    def sample_guess(self, rng: Pcg32, ctx: GuessContext) -> int:
        support, cutoffs = self.guess_tables[ctx]
        return support[rng.weighted_index(cutoffs)]


def simulate_rounds(
    strat1: ClassicalStrategy,
    strat2: ClassicalStrategy,
    rounds: int,
    seed: int,
    exclusion: Exclusion = "guesses",
) -> SimResult:
    """Deterministic Monte Carlo; per round the stream order is
    d1, d2, g1, g2 (two 32-bit outputs each)."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    if exclusion != "guesses":
        raise ValueError("simulation supports the played rule (guess exclusion) only")
    s1 = _Sampler(strat1, seat=1)
    s2 = _Sampler(strat2, seat=2)
    rng = Pcg32(seed)
    wins1 = wins2 = void = 0
    for _ in range(rounds):
        d1 = s1.sample_draw(rng)
        d2 = s2.sample_draw(rng)
        g1 = s1.sample_guess(rng, (d1, ()))
        g2 = s2.sample_guess(rng, (d2, (g1,)))
        total = d1 + d2
        if g1 == total:
            wins1 += 1
        elif g2 == total:
            wins2 += 1
        else:
            void += 1
    return SimResult(wins1, wins2, void)


# -- strategy builders ---------------------------------------------------------


def uniform_draws(n_coins: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1, n_coins + 1) for _ in draw_space(n_coins))


def _point(g: int) -> dict[int, Fraction]:
    return {g: Fraction(1)}


def _uniform_over(guesses) -> dict[int, Fraction]:
    guesses = list(guesses)
    return {g: Fraction(1, len(guesses)) for g in guesses}


def strategy_fixed_guess(n_coins: int, guess: int) -> ClassicalStrategy:
    """Seat-1 strategy: uniform draws, always call ``guess``.

    With guess = N_c this is the leak-nothing strategy: the call carries no
    information about the hidden draw, and N_c is consistent with every one.
    """
    return ClassicalStrategy(
        n_coins,
        uniform_draws(n_coins),
        {(d, ()): _point(guess) for d in draw_space(n_coins)},
    )


def strategy_random_consistent(n_coins: int) -> ClassicalStrategy:
    """Seat-1 strategy: uniform draws, uniform guess over totals consistent
    with the own draw (d .. d + N_c)."""
    return ClassicalStrategy(
        n_coins,
        uniform_draws(n_coins),
        {(d, ()): _uniform_over(range(d, d + n_coins + 1)) for d in draw_space(n_coins)},
    )


def strategy_own_draw(n_coins: int, opponent_draw: int = 0) -> ClassicalStrategy:
    """Seat-1 strategy for a known opponent draw: guess own + opponent."""
    return ClassicalStrategy(
        n_coins,
        uniform_draws(n_coins),
        {(d, ()): _point(d + opponent_draw) for d in draw_space(n_coins)},
    )


def strategy_point_draw(n_coins: int, draw: int, seat: int = 2) -> ClassicalStrategy:
    """Degenerate draw at ``draw``; guesses uniform over what remains."""
    dist = tuple(Fraction(1) if d == draw else Fraction(0) for d in draw_space(n_coins))
    if seat == 1:
        policy = {(d, ()): _uniform_over(guess_space(n_coins)) for d in draw_space(n_coins)}
    else:
        policy = {
            (d, (g1,)): _uniform_over(g for g in guess_space(n_coins) if g != g1)
            for d in draw_space(n_coins)
            for g1 in guess_space(n_coins)
        }
    return ClassicalStrategy(n_coins, dist, policy)


def strategy_consistent_responder(n_coins: int) -> ClassicalStrategy:
    """Seat-2 strategy: uniform draws; guess uniformly over consistent
    totals not yet taken, falling back to any untaken total."""
    policy = {}
    for d in draw_space(n_coins):
        for g1 in guess_space(n_coins):
            allowed = [t for t in range(d, d + n_coins + 1) if t != g1]
            if not allowed:
                allowed = [t for t in guess_space(n_coins) if t != g1]
            policy[(d, (g1,))] = _uniform_over(allowed)
    return ClassicalStrategy(n_coins, uniform_draws(n_coins), policy)


def strategy_random_responder(n_coins: int) -> ClassicalStrategy:
    """Seat-2 strategy: uniform draws, uniform guess over untaken totals."""
    policy = {
        (d, (g1,)): _uniform_over(g for g in guess_space(n_coins) if g != g1)
        for d in draw_space(n_coins)
        for g1 in guess_space(n_coins)
    }
    return ClassicalStrategy(n_coins, uniform_draws(n_coins), policy)


def stable_profile(n_coins: int) -> tuple[ClassicalStrategy, ClassicalStrategy]:
    """The even profile: seat 1 hides its draw behind a constant N_c call,
    seat 2 draws at random and answers with a consistent untaken total.
    Yields P1 = P2 = 1/2 for every N_c."""
    return strategy_fixed_guess(n_coins, n_coins), strategy_consistent_responder(n_coins)


# -- strategy (de)serialization -------------------------------------------------


def strategy_to_json(strat: ClassicalStrategy) -> dict:
    return {
        "n_coins": strat.n_coins,
        "draw_distribution": [format_rational(p) for p in strat.draw_distribution],
        "guess_policy": [
            {
                "draw": own,
                "prior_guesses": list(prior),
                "distribution": {str(g): format_rational(q) for g, q in dist.items()},
            }
            for (own, prior), dist in sorted(strat.guess_policy.items())
        ],
    }


def strategy_from_json(payload: dict) -> ClassicalStrategy:
    policy = {}
    for entry in payload["guess_policy"]:
        ctx = (entry["draw"], tuple(entry["prior_guesses"]))
        policy[ctx] = {
            int(g): parse_rational(q) for g, q in entry["distribution"].items()
        }
    return ClassicalStrategy(
        payload["n_coins"],
        tuple(parse_rational(p) for p in payload["draw_distribution"]),
        policy,
    )
