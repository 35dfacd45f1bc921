"""JSON-over-HTTP service: stateless analysis endpoints plus live sessions.

Status codes: 400 malformed body or query, 403 out-of-turn / acting for a
seat you do not hold (an engine seat), 404 unknown session, 409 rule
violation (repeated total or non-orthogonal quantum guess, with the
squared overlap in the payload), 422 move invalid for the variant.

Analysis endpoints are pure functions of the package and are marked
cacheable; session endpoints serialize per session id (a lock per session),
while distinct sessions proceed concurrently.  Rationals are strings
"num/den" throughout.
"""

from __future__ import annotations

import re
import threading

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import policies, quantum, semiclassical
from .cli import _qcg_tables_payload, _scg_tables_payload
from .formats import exact_float
from .scalars import format_rational
from .session import (
    ConfigError,
    GameSession,
    InvalidMoveError,
    OutOfTurnError,
    RuleViolationError,
    SessionError,
    create_session,
)

_PAIR_RE = re.compile(r"\((\d)\s*,\s*(\d)\)")

_CACHEABLE = {"Cache-Control": "public, max-age=3600"}


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, tuple[GameSession, threading.Lock]] = {}
        self._lock = threading.Lock()

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = (session, threading.Lock())

    def get(self, session_id: str) -> tuple[GameSession, threading.Lock]:
        with self._lock:
            entry = self._sessions.get(session_id)
        if entry is None:
            raise LookupError(session_id)
        return entry


def _error(status: int, message: str, payload: dict | None = None) -> JSONResponse:
    body = {"error": message}
    if payload:
        body.update(payload)
    return JSONResponse(body, status_code=status)


def _session_error_response(exc: SessionError) -> JSONResponse:
    payload = {
        k: format_rational(v) if hasattr(v, "denominator") else v
        for k, v in exc.payload.items()
    }
    if isinstance(exc, RuleViolationError):
        return _error(409, str(exc), payload)
    if isinstance(exc, OutOfTurnError):
        return _error(403, str(exc), payload)
    if isinstance(exc, InvalidMoveError):
        return _error(422, str(exc), payload)
    if isinstance(exc, (ConfigError, policies.UnknownPolicyError)):
        return _error(400, str(exc), payload)
    return _error(400, str(exc), payload)


def create_app() -> FastAPI:
    app = FastAPI(title="chinos", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore()

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return _error(400, "malformed request body")

    @app.exception_handler(SessionError)
    async def session_error(request: Request, exc: SessionError):
        return _session_error_response(exc)

    # -- sessions ---------------------------------------------------------

    def _view_payload(session: GameSession, perspective) -> dict:
        return session.state_view(perspective)

    def _parse_perspective(as_: str):
        mapping = {"player1": 1, "player2": 2, "spectator": "spectator"}
        if as_ not in mapping:
            raise ValueError(as_)
        return mapping[as_]

    def _require_human(session: GameSession, player) -> int:
        if player not in (1, 2):
            raise InvalidMoveError(f"player must be 1 or 2, got {player!r}")
        if session.players[player - 1].kind != "human":
            raise OutOfTurnError(f"seat {player} is engine-held; you cannot act for it")
        return player

    @app.post("/sessions")
    def post_session(body: dict = Body(...)):
        try:
            session = create_session(
                variant=body.get("variant"),
                player_configs=body.get("players", []),
                rounds=body.get("rounds", 1),
                seed=body.get("seed", 0),
                scoring=body.get("scoring", "fidelity"),
                n_coins=body.get("n_coins", 1),
            )
        except (TypeError, AttributeError) as exc:
            return _error(400, f"malformed session config: {exc}")
        policies.auto_play(session)
        store.add(session)
        return {"id": session.id, "state": _view_payload(session, "spectator")}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str, as_: str = Query("spectator", alias="as")):
        try:
            session, lock = store.get(session_id)
        except LookupError:
            return _error(404, f"unknown session {session_id}")
        try:
            perspective = _parse_perspective(as_)
        except ValueError:
            return _error(400, f"as must be player1|player2|spectator, got {as_!r}")
        with lock:
            return _view_payload(session, perspective)

    def _mutate(session_id: str, body: dict, action) -> JSONResponse | dict:
        try:
            session, lock = store.get(session_id)
        except LookupError:
            return _error(404, f"unknown session {session_id}")
        with lock:
            try:
                perspective = action(session, body)
            except SessionError as exc:
                return _session_error_response(exc)
            policies.auto_play(session)
            return _view_payload(session, perspective)

    @app.post("/sessions/{session_id}/draw")
    def post_draw(session_id: str, body: dict = Body(...)):
        def action(session: GameSession, payload: dict):
            player = _require_human(session, payload.get("player"))
            draw = payload.get("draw")
            session.submit_draw(player, draw)
            return player

        return _mutate(session_id, body, action)

    @app.post("/sessions/{session_id}/guess")
    def post_guess(session_id: str, body: dict = Body(...)):
        def action(session: GameSession, payload: dict):
            player = _require_human(session, payload.get("player"))
            guess = payload.get("guess")
            if isinstance(guess, list):
                guess = tuple(guess)
            session.submit_guess(player, guess)
            return player

        return _mutate(session_id, body, action)

    @app.post("/sessions/{session_id}/resolve")
    def post_resolve(session_id: str, body: dict = Body(default={})):
        def action(session: GameSession, payload: dict):
            session.resolve_round()
            return "spectator"

        return _mutate(session_id, body, action)

    @app.get("/sessions/{session_id}/log")
    def get_log(session_id: str):
        try:
            session, lock = store.get(session_id)
        except LookupError:
            return _error(404, f"unknown session {session_id}")
        with lock:
            return PlainTextResponse(
                session.export_log(), media_type="application/x-ndjson"
            )

    # -- stateless analysis ------------------------------------------------

    @app.get("/analysis/scg/tables")
    def scg_tables():
        return JSONResponse(_scg_tables_payload(), headers=_CACHEABLE)

    @app.get("/analysis/qcg/gram")
    def qcg_gram():
        return JSONResponse(_qcg_tables_payload()["gram"], headers=_CACHEABLE)

    @app.get("/analysis/qcg/exhaustive")
    def qcg_exhaustive():
        report = quantum.exhaustive_analysis()
        payload = report.to_json()
        payload["winning_strategy_payoff"] = exact_float(quantum.winning_strategy_payoff())
        payload["verdict"] = quantum.symmetry_verdict(report)
        return JSONResponse(payload, headers=_CACHEABLE)

    @app.get("/analysis/qcg/admissible")
    def qcg_admissible(prior: str = Query(...)):
        pairs = [(int(a), int(b)) for a, b in _PAIR_RE.findall(prior)]
        if not pairs:
            return _error(400, "prior must contain pairs like (2,2)")
        try:
            admissible = quantum.admissible_guesses(pairs)
        except ValueError as exc:
            return _error(400, str(exc))
        return JSONResponse(
            {
                "prior": [list(p) for p in pairs],
                "admissible": sorted(list(p) for p in admissible),
            },
            headers=_CACHEABLE,
        )

    @app.get("/analysis/scg/averaged")
    def scg_averaged():
        return JSONResponse(
            {
                f"O{d}": [exact_float(p) for p in dist]
                for d, dist in semiclassical.averaged_table().items()
            },
            headers=_CACHEABLE,
        )

    return app
