"""Turn-based state machine for live play of any variant.

Phase order per round is fixed: Draw(1) → Draw(2) → Guess(1) → Guess(2)
→ Resolve.  Draws stay hidden until the round resolves; guesses are public
the moment they are accepted.  The second guess is rejected unless it
differs from the first (classical/semiclassical) or its state is exactly
orthogonal to the first guess state (quantum) - the rejection carries the
offending squared overlap as a rational.

Scoring: classical and semiclassical rounds award 1 to the player whose
call matches the (measured) total, or nobody.  Quantum rounds default to
adding each player's exact fidelity to their score ("fidelity" mode); the
"measured" mode instead samples a single winner with odds f1 : f2 for
discrete play feel.  The mode is fixed at creation; analysis never uses
the measured mode.

Determinism: one PCG32 stream per session, consumed in event order (engine
draw choices, then engine guess choices, then measurement).  Every logged
event records the stream counter before the event applied, so replaying a
log with the same seed reproduces outcomes and scores bit-for-bit; the
stream is re-positioned with O(log n) jumps instead of re-running policies.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

from . import quantum
from .classical import draw_space, guess_space
from .fock import born_distribution, pair_state
from .formats import distribution_json, exact_float
from .rng import Pcg32, cumulative_cutoffs
from .scalars import format_rational
from .semiclassical import joint_distribution

VARIANTS = ("classical", "semiclassical", "quantum")
SCORING_MODES = ("fidelity", "measured")


class SessionError(Exception):
    """Base class; carries an optional structured payload for transports."""

    def __init__(self, message: str, payload: dict | None = None) -> None:
        super().__init__(message)
        self.payload = payload or {}


class ConfigError(SessionError):
    pass


class OutOfTurnError(SessionError):
    pass


class InvalidMoveError(SessionError):
    """Move shape/value impossible for the variant."""


class RuleViolationError(SessionError):
    """Legal-shaped move forbidden by the guessing rules."""


class ReplayMismatchError(SessionError):
    pass


class Phase(str, Enum):
    DRAW1 = "draw1"
    DRAW2 = "draw2"
    GUESS1 = "guess1"
    GUESS2 = "guess2"
    RESOLVE = "resolve"
    FINISHED = "finished"


_DRAW_PHASES = {Phase.DRAW1: 1, Phase.DRAW2: 2}
_GUESS_PHASES = {Phase.GUESS1: 1, Phase.GUESS2: 2}


@dataclass(frozen=True)
class PlayerConfig:
    kind: str  # "human" | "engine"
    policy: str | None = None

    def to_json(self) -> dict:
        data: dict[str, Any] = {"kind": self.kind}
        if self.policy is not None:
            data["policy"] = self.policy
        return data


@dataclass(frozen=True)
class RoundResult:
    round: int
    draws: dict[int, Any]
    guesses: dict[int, Any]
    distribution: tuple[Fraction, ...]
    outcome: int | None
    payoffs: dict[int, Fraction] | None
    winner: int | None
    void: bool

    def to_json(self) -> dict:
        return {
            "round": self.round,
            "draws": {f"player{p}": _move_json(d) for p, d in self.draws.items()},
            "guesses": {f"player{p}": _move_json(g) for p, g in self.guesses.items()},
            "distribution": distribution_json(self.distribution),
            "outcome": self.outcome,
            "payoffs": None
            if self.payoffs is None
            else {f"player{p}": exact_float(v) for p, v in self.payoffs.items()},
            "winner": self.winner,
            "void": self.void,
        }


def _move_json(value):
    if isinstance(value, tuple):
        return list(value)
    return value


def _move_from_json(value):
    if isinstance(value, list):
        return tuple(value)
    return value


class GameSession:
    """One serialized game; mutate only through submit_*/resolve_round."""

    def __init__(
        self,
        variant: str,
        players: tuple[PlayerConfig, PlayerConfig],
        rounds: int,
        seed: int,
        scoring: str = "fidelity",
        n_coins: int = 1,
        session_id: str | None = None,
    ) -> None:
        self.id = session_id or uuid.uuid4().hex
        self.variant = variant
        self.players = players
        self.rounds = rounds
        self.seed = seed
        self.scoring = scoring
        self.n_coins = n_coins
        self.rng = Pcg32(seed)
        self.round = 1
        self.phase = Phase.DRAW1
        self.hidden_draws: dict[int, Any] = {}
        self.guesses: dict[int, Any] = {}
        self.scores: dict[int, Fraction] = {1: Fraction(0), 2: Fraction(0)}
        self.wins: dict[int, int] = {1: 0, 2: 0}
        self.void_rounds = 0
        self.history: list[RoundResult] = []
        self.log: list[dict] = []
        self._log_event(0, "created", None, {"type": "config", **self._config_json()})

    # -- configuration ---------------------------------------------------

    def _config_json(self) -> dict:
        return {
            "variant": self.variant,
            "players": [p.to_json() for p in self.players],
            "rounds": self.rounds,
            "seed": self.seed,
            "scoring": self.scoring,
            "n_coins": self.n_coins,
            "id": self.id,
        }

    # -- logging ------------------------------------------------------------

    def _log_event(self, round_no: int, phase: str, player: int | None, action: dict) -> None:
        self.log.append(
            {
                "round": round_no,
                "phase": phase,
                "player": player,
                "action": action,
                "rng_counter": self.rng.counter,
            }
        )

    def export_log(self) -> str:
        """JSON lines, one event per line; reloadable by :func:`replay_log`."""
        import json

        return "\n".join(json.dumps(e) for e in self.log) + "\n"

    # -- turn handling ---------------------------------------------------

    @property
    def finished(self) -> bool:
        return self.phase is Phase.FINISHED

    def to_move(self) -> int | None:
        if self.phase in _DRAW_PHASES:
            return _DRAW_PHASES[self.phase]
        if self.phase in _GUESS_PHASES:
            return _GUESS_PHASES[self.phase]
        return None

    def _require_phase(self, expected: dict, player: int, verb: str) -> None:
        if player not in (1, 2):
            raise InvalidMoveError(f"player must be 1 or 2, got {player}")
        if self.phase not in expected:
            raise OutOfTurnError(f"cannot {verb} during phase {self.phase.value}")
        if expected[self.phase] != player:
            raise OutOfTurnError(
                f"it is player {expected[self.phase]}'s turn to {verb}, not player {player}'s"
            )

    def submit_draw(self, player: int, draw) -> None:
        self._require_phase(_DRAW_PHASES, player, "draw")
        draw = self._validate_draw(draw)
        self._log_event(self.round, self.phase.value, player, {"type": "draw", "value": _move_json(draw)})
        self.hidden_draws[player] = draw
        self.phase = Phase.DRAW2 if self.phase is Phase.DRAW1 else Phase.GUESS1

    def _validate_draw(self, draw):
        if self.variant == "classical":
            if not isinstance(draw, int) or draw not in draw_space(self.n_coins):
                raise InvalidMoveError(
                    f"classical draw must be an integer in 0..{self.n_coins}, got {draw!r}"
                )
            return draw
        if not isinstance(draw, int) or draw not in (1, 2, 3, 4):
            raise InvalidMoveError(f"draw must be an operator index 1..4, got {draw!r}")
        return draw

    def submit_guess(self, player: int, guess) -> None:
        self._require_phase(_GUESS_PHASES, player, "guess")
        guess = self._validate_guess(player, guess)
        self._log_event(self.round, self.phase.value, player, {"type": "guess", "value": _move_json(guess)})
        self.guesses[player] = guess
        self.phase = Phase.GUESS2 if self.phase is Phase.GUESS1 else Phase.RESOLVE

    def _validate_guess(self, player: int, guess):
        if self.variant == "quantum":
            try:
                j, k = guess
                pair = (int(j), int(k))
            except (TypeError, ValueError):
                raise InvalidMoveError(
                    f"quantum guess must be an operator pair [j, k], got {guess!r}"
                ) from None
            if pair[0] not in (1, 2, 3, 4) or pair[1] not in (1, 2, 3, 4):
                raise InvalidMoveError(f"operator indices must be 1..4, got {list(pair)}")
            if player == 1 and pair[0] > pair[1]:
                raise InvalidMoveError(
                    "the first caller's guess space is the ordered pairs with j ≤ k"
                )
            if player == 2:
                metric = quantum.gram_metric()
                prior = self.guesses[1]
                if not metric.is_orthogonal(pair, prior):
                    ov_sq = metric.overlap_sq(pair, prior)
                    raise RuleViolationError(
                        f"guess {list(pair)} is not orthogonal to the prior guess "
                        f"{list(prior)} (|overlap|² = {format_rational(ov_sq)})",
                        payload={"overlap_sq": ov_sq},
                    )
            return pair
        # classical / semiclassical: a called total
        if not isinstance(guess, int) or guess not in guess_space(self.n_coins):
            raise InvalidMoveError(
                f"guess must be a total in 0..{2 * self.n_coins}, got {guess!r}"
            )
        if player == 2 and guess == self.guesses[1]:
            raise RuleViolationError(
                f"total {guess} was already called", payload={"taken": guess}
            )
        return guess

    # -- resolution ------------------------------------------------------

    def resolve_round(self) -> RoundResult:
        if self.phase is not Phase.RESOLVE:
            raise OutOfTurnError(f"cannot resolve during phase {self.phase.value}")
        self._log_event(self.round, self.phase.value, None, {"type": "resolve"})
        if self.variant == "classical":
            result = self._resolve_classical()
        elif self.variant == "semiclassical":
            result = self._resolve_semiclassical()
        else:
            result = self._resolve_quantum()
        # annotate the resolve event with the outcome for replay verification
        self.log[-1]["action"] = {"type": "resolve", "result": result.to_json()}
        self.history.append(result)
        if result.winner is not None:
            self.wins[result.winner] += 1
        elif result.void:
            self.void_rounds += 1
        self.hidden_draws = {}
        self.guesses = {}
        if self.round >= self.rounds:
            self.phase = Phase.FINISHED
        else:
            self.round += 1
            self.phase = Phase.DRAW1
        return result

    def _finish_round(self, distribution, outcome, payoffs, winner, void) -> RoundResult:
        return RoundResult(
            self.round,
            dict(self.hidden_draws),
            dict(self.guesses),
            tuple(distribution),
            outcome,
            payoffs,
            winner,
            void,
        )

    def _resolve_classical(self) -> RoundResult:
        total = self.hidden_draws[1] + self.hidden_draws[2]
        dist = [Fraction(0)] * (2 * self.n_coins + 1)
        dist[total] = Fraction(1)
        winner = self._matching_guesser(total)
        if winner is not None:
            self.scores[winner] += 1
        return self._finish_round(dist, total, None, winner, winner is None)

    def _resolve_semiclassical(self) -> RoundResult:
        dist = joint_distribution(self.hidden_draws[1], self.hidden_draws[2])
        outcome = self.rng.weighted_index(cumulative_cutoffs(list(dist)))
        winner = self._matching_guesser(outcome)
        if winner is not None:
            self.scores[winner] += 1
        return self._finish_round(dist, outcome, None, winner, winner is None)

    def _matching_guesser(self, total: int) -> int | None:
        if self.guesses[1] == total:
            return 1
        if self.guesses[2] == total:
            return 2
        return None

    def _resolve_quantum(self) -> RoundResult:
        joint = pair_state(self.hidden_draws[1], self.hidden_draws[2])
        dist = [p.as_fraction() for p in born_distribution(joint)]
        dist += [Fraction(0)] * (3 - len(dist))
        payoffs = {
            p: quantum.gain(self.guesses[p], self.hidden_draws[1], self.hidden_draws[2])
            for p in (1, 2)
        }
        if self.scoring == "fidelity":
            self.scores[1] += payoffs[1]
            self.scores[2] += payoffs[2]
            return self._finish_round(dist, None, payoffs, None, False)
        total = payoffs[1] + payoffs[2]
        if total == 0:
            return self._finish_round(dist, None, payoffs, None, True)
        winner = 1 + self.rng.weighted_index(
            cumulative_cutoffs([payoffs[1] / total, payoffs[2] / total])
        )
        self.scores[winner] += 1
        return self._finish_round(dist, None, payoffs, winner, False)

    # -- views ----------------------------------------------------------------

    def state_view(self, perspective: int | str = "spectator") -> dict:
        """Filtered view; a hidden draw appears only to its owner until the
        round resolves (then it is part of the round result)."""
        if perspective not in (1, 2, "spectator"):
            raise ValueError(f"perspective must be 1, 2, or 'spectator', got {perspective!r}")
        seat = perspective if perspective in (1, 2) else None
        view: dict[str, Any] = {
            "id": self.id,
            "variant": self.variant,
            "n_coins": self.n_coins,
            "rounds": self.rounds,
            "round": self.round,
            "phase": self.phase.value,
            "scoring": self.scoring,
            "to_move": self.to_move(),
            "players": [p.to_json() for p in self.players],
            "perspective": f"player{seat}" if seat else "spectator",
            "your_seat": seat,
            "your_draw": _move_json(self.hidden_draws.get(seat)) if seat else None,
            "public_guesses": {
                f"player{p}": _move_json(self.guesses.get(p)) for p in (1, 2)
            },
            "scores": {f"player{p}": exact_float(self.scores[p]) for p in (1, 2)},
            "wins": {f"player{p}": self.wins[p] for p in (1, 2)},
            "void_rounds": self.void_rounds,
            "last_result": self.history[-1].to_json() if self.history else None,
            "history": [r.to_json() for r in self.history],
        }
        if seat and self.to_move() == seat and self.phase in _DRAW_PHASES:
            view["legal_draws"] = self._legal_draws()
        if seat and self.to_move() == seat and self.phase in _GUESS_PHASES:
            view["legal_guesses"] = self._legal_guesses(seat)
        return view

    def _legal_draws(self) -> list:
        if self.variant == "classical":
            return list(draw_space(self.n_coins))
        return [1, 2, 3, 4]

    def _legal_guesses(self, seat: int) -> list:
        if self.variant == "quantum":
            if seat == 1:
                return [list(p) for p in quantum.FIRST_CALLER_PAIRS]
            return sorted(list(p) for p in quantum.admissible_guesses([self.guesses[1]]))
        taken = self.guesses.get(1) if seat == 2 else None
        return [g for g in guess_space(self.n_coins) if g != taken]


def create_session(
    variant: str,
    player_configs,
    rounds: int,
    seed: int,
    scoring: str = "fidelity",
    n_coins: int = 1,
    session_id: str | None = None,
) -> GameSession:
    if variant not in VARIANTS:
        raise ConfigError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if not isinstance(rounds, int) or rounds < 1:
        raise ConfigError(f"rounds must be a positive integer, got {rounds!r}")
    if scoring not in SCORING_MODES:
        raise ConfigError(f"scoring must be one of {SCORING_MODES}, got {scoring!r}")
    if not isinstance(n_coins, int) or n_coins < 1:
        raise ConfigError(f"n_coins must be a positive integer, got {n_coins!r}")
    if variant != "classical" and n_coins != 1:
        raise ConfigError(f"the {variant} variant is defined for one coin per player")
    if not isinstance(seed, int):
        raise ConfigError(f"seed must be an integer, got {seed!r}")
    configs = []
    for raw in player_configs:
        if isinstance(raw, PlayerConfig):
            cfg = raw
        elif isinstance(raw, dict):
            cfg = PlayerConfig(raw.get("kind", ""), raw.get("policy"))
        else:
            raise ConfigError(f"player config must be a mapping, got {raw!r}")
        if cfg.kind not in ("human", "engine"):
            raise ConfigError(f"player kind must be 'human' or 'engine', got {cfg.kind!r}")
        if cfg.kind == "engine":
            from . import policies

            policies.check_policy(cfg.policy, variant)
        configs.append(cfg)
    if len(configs) != 2:
        raise ConfigError(f"exactly 2 players required, got {len(configs)}")
    return GameSession(variant, tuple(configs), rounds, seed, scoring, n_coins, session_id)


def replay_log(text: str) -> GameSession:
    """Rebuild a session from an exported log, verifying every resolution.

    Logged moves are re-applied directly (engine policies are not re-run);
    before each event the RNG stream jumps to the logged counter, so
    measurements land on exactly the random words they consumed originally.
    """
    import json

    events = [json.loads(line) for line in text.splitlines() if line.strip()]
    if not events or events[0]["action"].get("type") != "config":
        raise ReplayMismatchError("log must start with the config event")
    cfg = events[0]["action"]
    session = create_session(
        cfg["variant"],
        cfg["players"],
        cfg["rounds"],
        cfg["seed"],
        cfg["scoring"],
        cfg["n_coins"],
        session_id=cfg.get("id"),
    )
    for event in events[1:]:
        target = event["rng_counter"]
        if target < session.rng.counter:
            raise ReplayMismatchError("log counters run backwards")
        session.rng.advance(target - session.rng.counter)
        action = event["action"]
        if action["type"] == "draw":
            session.submit_draw(event["player"], _move_from_json(action["value"]))
        elif action["type"] == "guess":
            session.submit_guess(event["player"], _move_from_json(action["value"]))
        elif action["type"] == "resolve":
            result = session.resolve_round()
            if action.get("result") is not None and result.to_json() != action["result"]:
                raise ReplayMismatchError(
                    f"round {result.round} resolved differently on replay"
                )
        else:
            raise ReplayMismatchError(f"unknown event type {action['type']!r}")
    return session
