"""HTTP session backend for the search game.

A session hides one randomly drawn benchmark function behind a click API:
the player submits normalized coordinates, receives the score, and the full
click history; the function's identity is revealed only by finishing. All
scoring happens server-side. Coordinates and scores are canonicalized to
the gamestore wire precision when a click is accepted, so the returned
history, the persisted trace, and the finish summary agree exactly.

`GameService` is framework-free (and what the tests drive directly);
`create_app` wraps it in a FastAPI application exposing:

    POST /sessions                  {user_id, mode}
    POST /sessions/{id}/clicks      {x1, x2}
    GET  /sessions/{id}
    POST /sessions/{id}/finish

Errors carry a machine-readable kind: {"error": {"kind": ..., "message": ...}}.
"""

import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import testfns
from .errors import NotFoundError, SearchLabError, StateError, ValidationError
from .gamestore import GameRecord, GameStore, canonical9

DEFAULT_BUDGET = 20
DEFAULT_TIMEOUT_S = 30 * 60.0
F_STAR = 100.0  # every normalized stimulus peaks at 100


@dataclass
class _Session:
    session_id: str
    user_id: str
    function_id: int  # never exposed while active
    mode: int
    budget: int
    clicks: list[dict] = field(default_factory=list)
    state: str = "active"  # active | finished | expired
    last_activity: float = 0.0
    summary: Optional[dict] = None


class GameService:
    """Session registry; thread-safe, persistence through a GameStore."""

    def __init__(
        self,
        store: Optional[GameStore] = None,
        budget: int = DEFAULT_BUDGET,
        timeout_s: float = DEFAULT_TIMEOUT_S,
        seed: Optional[int] = None,
        clock: Callable[[], float] = time.time,
    ):
        self.store = store if store is not None else GameStore()
        self.budget = int(budget)
        self.timeout_s = float(timeout_s)
        self._rng = np.random.default_rng(seed)
        self._clock = clock
        self._sessions: dict[str, _Session] = {}
        self._lock = threading.RLock()

    # -- helpers ---------------------------------------------------------

    def _get(self, session_id: str) -> _Session:
        s = self._sessions.get(session_id)
        if s is None:
            raise NotFoundError(f"unknown session {session_id!r}")
        self._expire_if_stale(s)
        return s

    def _expire_if_stale(self, s: _Session) -> None:
        if s.state != "active":
            return
        if self._clock() - s.last_activity > self.timeout_s:
            if s.clicks:
                self._do_finish(s)
            else:
                s.state = "expired"

    def _descriptor(self, s: _Session) -> dict:
        d = {
            "session_id": s.session_id,
            "user_id": s.user_id,
            "mode": s.mode,
            "budget": s.budget,
            "clicks_used": len(s.clicks),
            "clicks_remaining": s.budget - len(s.clicks),
            "state": s.state,
            "history": [dict(c) for c in s.clicks],
        }
        if s.mode == 2:
            d["target_value"] = F_STAR
        if s.mode == 3:
            d["cumulative_score"] = canonical9(sum(c["score"] for c in s.clicks))
        if s.summary is not None:
            d["summary"] = dict(s.summary)
        return d

    def _do_finish(self, s: _Session) -> dict:
        scores = [c["score"] for c in s.clicks]
        best = max(scores)
        ts = int(self._clock() * 1000)
        while (s.user_id, ts) in set(self.store.list_games()):
            ts += 1  # keep the (user, end-time) game key unique
        for c in s.clicks:
            self.store.append_record(
                GameRecord(
                    user_id=s.user_id,
                    function_id=s.function_id,
                    mode=s.mode,
                    game_end_timestamp=ts,
                    click_index=c["click_index"],
                    x1=c["x1"],
                    x2=c["x2"],
                    score=c["score"],
                )
            )
        fid = testfns.get_function(s.function_id).id
        s.summary = {
            "user_id": s.user_id,
            "game_end_timestamp": ts,
            "mode": s.mode,
            "n_clicks": len(s.clicks),
            "best_score": best,
            "simple_regret": F_STAR - best,
            "cumulative_regret": sum(F_STAR - v for v in scores),
            "function_id": fid.id,
            "function_name": fid.name,
        }
        s.state = "finished"
        return dict(s.summary)

    # -- operations ------------------------------------------------------

    def create_session(self, user_id: str, mode: int) -> dict:
        if not isinstance(mode, int) or mode not in (1, 2, 3):
            raise ValidationError(f"mode must be 1, 2 or 3, got {mode!r}")
        if not user_id or any(c.isspace() for c in str(user_id)):
            raise ValidationError(f"user_id must be non-empty without whitespace, got {user_id!r}")
        with self._lock:
            session_id = secrets.token_hex(16)
            s = _Session(
                session_id=session_id,
                user_id=str(user_id),
                function_id=int(self._rng.integers(0, testfns.N_FUNCTIONS)),
                mode=mode,
                budget=self.budget,
                last_activity=self._clock(),
            )
            self._sessions[session_id] = s
            return self._descriptor(s)

    def click(self, session_id: str, x1: float, x2: float) -> dict:
        with self._lock:
            s = self._get(session_id)
            if s.state != "active":
                raise StateError(f"session is {s.state}; no further clicks accepted")
            if len(s.clicks) >= s.budget:
                raise StateError(f"click budget of {s.budget} exhausted")
            if not (np.isfinite(x1) and np.isfinite(x2) and 0.0 <= x1 <= 1.0 and 0.0 <= x2 <= 1.0):
                raise ValidationError(f"click must lie in [0,1]^2, got ({x1}, {x2})")
            cx1, cx2 = canonical9(float(x1)), canonical9(float(x2))
            score = canonical9(testfns.evaluate(s.function_id, (cx1, cx2)))
            s.clicks.append({"click_index": len(s.clicks) + 1, "x1": cx1, "x2": cx2, "score": score})
            s.last_activity = self._clock()
            out = {
                "score": score,
                "clicks_remaining": s.budget - len(s.clicks),
                "history": [dict(c) for c in s.clicks],
            }
            if s.mode == 3:
                out["cumulative_score"] = canonical9(sum(c["score"] for c in s.clicks))
            return out

    def get_state(self, session_id: str) -> dict:
        with self._lock:
            return self._descriptor(self._get(session_id))

    def finish_session(self, session_id: str) -> dict:
        with self._lock:
            s = self._get(session_id)
            if s.summary is not None:
                return dict(s.summary)  # idempotent second finish
            if s.state == "expired":
                raise StateError("session expired with no clicks; nothing to finish")
            if not s.clicks:
                raise StateError("cannot finish a session with no clicks")
            return self._do_finish(s)


def create_app(service: Optional[GameService] = None):
    """FastAPI application over a GameService."""
    from fastapi import FastAPI, Request
    from fastapi.responses import JSONResponse
    from pydantic import BaseModel

    from fastapi.middleware.cors import CORSMiddleware

    svc = service if service is not None else GameService()
    app = FastAPI(title="searchlab game service")
    app.state.service = svc
    # the browser client is served from another origin (static file / dev server)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    class CreateSession(BaseModel):
        user_id: str
        mode: int

    class Click(BaseModel):
        x1: float
        x2: float

    _STATUS = [
        (NotFoundError, 404, "not_found"),
        (StateError, 409, "state"),
        (ValidationError, 400, "validation"),
    ]

    @app.exception_handler(SearchLabError)
    async def _domain_error(request: Request, exc: SearchLabError):
        for klass, status, kind in _STATUS:
            if isinstance(exc, klass):
                message = exc.args[0] if exc.args else str(exc)
                return JSONResponse(status_code=status, content={"error": {"kind": kind, "message": message}})
        return JSONResponse(status_code=500, content={"error": {"kind": "internal", "message": str(exc)}})

    @app.post("/sessions")
    def create_session(body: CreateSession):
        return svc.create_session(body.user_id, body.mode)

    @app.post("/sessions/{session_id}/clicks")
    def click(session_id: str, body: Click):
        return svc.click(session_id, body.x1, body.x2)

    @app.get("/sessions/{session_id}")
    def get_state(session_id: str):
        return svc.get_state(session_id)

    @app.post("/sessions/{session_id}/finish")
    def finish(session_id: str):
        return svc.finish_session(session_id)

    return app
