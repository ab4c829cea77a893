"""JSON-over-HTTP game and analysis service.

Every probability is serialized both ways: `{"fraction": "2/3",
"decimal": 0.666...}`.  Errors carry machine-readable codes
(`invalid_tree`, `not_your_turn`, `vertex_dead`, `session_finished`, ...).
Analysis endpoints are stateless; per-session mutation is serialized by
the session's own lock.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .exploit import EXACT_TABLE_CAP, exploit_values, path_tables
from .optimal import SizeCapError, optimal_moves
from .session import SessionError, SessionStore, hint_values, redacted_state
from .trees import TreeSpecError, parse_tree_spec

_ERROR_STATUS = {
    "invalid_tree": 400,
    "invalid_engine": 400,
    "invalid_mode": 400,
    "cap_exceeded": 400,
    "vertex_dead": 400,
    "not_your_turn": 409,
    "session_finished": 409,
    "session_not_found": 404,
}


def prob_json(x) -> dict:
    if isinstance(x, Fraction):
        return {"fraction": f"{x.numerator}/{x.denominator}", "decimal": float(x)}
    return {"fraction": None, "decimal": float(x)}


def _per_move_json(per_move: dict[int, Fraction]) -> dict:
    return {str(v): prob_json(val) for v, val in sorted(per_move.items())}


class NewSessionBody(BaseModel):
    tree: str
    engine: str = "optimal"
    human_first: bool = True
    seed: int | None = None


class GuessBody(BaseModel):
    vertex: int
    hints: bool = False
    hint_mode: str | None = None


def create_app(store: SessionStore | None = None, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="minesearch")
    app.state.store = store if store is not None else SessionStore()
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(SessionError)
    async def _session_error(_req: Request, exc: SessionError):
        return JSONResponse(
            status_code=_ERROR_STATUS.get(exc.code, 400),
            content={"error": exc.code, "message": exc.message},
        )

    @app.exception_handler(TreeSpecError)
    async def _tree_error(_req: Request, exc: TreeSpecError):
        return JSONResponse(
            status_code=400, content={"error": "invalid_tree", "message": str(exc)}
        )

    @app.exception_handler(SizeCapError)
    async def _cap_error(_req: Request, exc: SizeCapError):
        return JSONResponse(
            status_code=400, content={"error": "cap_exceeded", "message": str(exc)}
        )

    @app.post("/api/session")
    def new_session(body: NewSessionBody):
        session = app.state.store.create(
            body.tree, body.engine, body.human_first, body.seed
        )
        return {"id": session.id, "state": redacted_state(session)}

    @app.get("/api/session/{session_id}")
    def get_session(session_id: str):
        return redacted_state(app.state.store.get(session_id))

    @app.post("/api/session/{session_id}/guess")
    def guess(session_id: str, body: GuessBody):
        outcome = app.state.store.guess(
            session_id, body.vertex, hints=body.hints, hint_mode=body.hint_mode
        )
        if outcome.get("hints"):
            outcome["hints"] = _per_move_json(outcome["hints"])
        outcome["state"] = redacted_state(app.state.store.get(session_id))
        return outcome

    @app.get("/api/session/{session_id}/hints")
    def hints(session_id: str, mode: str | None = None):
        session = app.state.store.get(session_id)
        if session.status != "active":
            raise SessionError("session_finished", "the game is over")
        return {"hints": _per_move_json(hint_values(session, mode))}

    @app.get("/api/analyze")
    def analyze(tree: str, mode: str = "optimal"):
        t = parse_tree_spec(tree)
        if mode == "optimal":
            rep = optimal_moves(t)
            return {
                "mode": "optimal",
                "value": prob_json(rep.value),
                "best_moves": sorted(rep.best_moves),
                "per_move": _per_move_json(rep.per_move_values),
            }
        if mode == "exploit":
            rep = exploit_values(t)
            return {
                "mode": "exploit",
                "P": prob_json(rep.P),
                "Q": prob_json(rep.Q),
                "best_moves": sorted(rep.best_first_moves),
                "per_move": _per_move_json(rep.per_move),
            }
        raise SessionError("invalid_mode", f"unknown analysis mode '{mode}'")

    @app.get("/api/tables")
    def tables(n: int, mode: str = "exact"):
        if mode == "exact" and n > EXACT_TABLE_CAP:
            raise SessionError(
                "cap_exceeded", f"exact tables capped at N={EXACT_TABLE_CAP}"
            )
        tab = path_tables(max(n, 3), mode)
        rows = []
        for i, p, q, s, a in tab.rows():
            if i > n:
                break
            rows.append(
                {
                    "n": i,
                    "p": prob_json(p),
                    "q": prob_json(q),
                    "s": prob_json(s),
                    "a": prob_json(a),
                }
            )
        return {"mode": tab.mode, "rows": rows}

    if frontend_dir and Path(frontend_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="ui")

    return app
