"""Live game sessions: a human versus an engine strategy.

The mine and every random engine choice come from one SplitMix64 stream
seeded at session creation, so a session replays deterministically from
(tree spec, seed, list of human guesses).  Each session can append its
events to a JSON-lines log; replaying the log reconstructs the session
byte for byte.  The mine is never part of client-facing state while the
session is active.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import rng
from .exploit import exploit_values
from .optimal import GENERIC_CAP, optimal_moves
from .simulate import STRATEGY_KINDS, choose_move
from .spider import SPIDER_CAP
from .trees import Tree, TreeSpecError, classify, induced_subtree, is_path, parse_tree_spec


class SessionError(Exception):
    """Game-level error with a machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _check_engine_caps(t: Tree, kind: str) -> None:
    if kind not in STRATEGY_KINDS:
        raise SessionError("invalid_engine", f"unknown engine strategy '{kind}'")
    if kind == "random":
        return
    if kind == "fixed_second_vertex":
        if not is_path(t):
            raise SessionError(
                "cap_exceeded", "fixed_second_vertex engine is only defined on paths"
            )
        return
    shape, _ = classify(t)
    if shape in ("path", "star"):
        return
    if shape == "spider" and kind == "exploit_dp" and t.n <= SPIDER_CAP:
        return
    if t.n > GENERIC_CAP:
        raise SessionError(
            "cap_exceeded",
            f"engine '{kind}' supports this shape only up to {GENERIC_CAP} vertices",
        )


@dataclass
class GameSession:
    id: str
    spec: str
    tree: Tree
    engine: str
    human_first: bool
    seed: int
    mine: int
    live: frozenset[int]
    turn: str  # "human" | "engine"
    status: str = "active"  # | "human_won" | "human_lost"
    history: list = field(default_factory=list)
    _stream: rng.SplitMix64 | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _log_path: Path | None = None

    def history_json(self) -> str:
        return json.dumps(self.history, sort_keys=True, separators=(",", ":"))


def _new_session(
    spec: str, engine: str, human_first: bool, seed: int, session_id: str | None = None
) -> GameSession:
    try:
        tree = parse_tree_spec(spec)
    except TreeSpecError as e:
        raise SessionError("invalid_tree", str(e)) from None
    _check_engine_caps(tree, engine)
    stream = rng.SplitMix64.from_seed(seed)
    verts = sorted(tree.vertices())
    mine = verts[stream.randrange(len(verts))]
    return GameSession(
        id=session_id or uuid.uuid4().hex,
        spec=spec,
        tree=tree,
        engine=engine,
        human_first=human_first,
        seed=seed,
        mine=mine,
        live=frozenset(tree.vertices()),
        turn="human" if human_first else "engine",
        _stream=stream,
    )


def _apply_guess(session: GameSession, actor: str, vertex: int) -> dict:
    """Remove `vertex`; update live set, history and status."""
    if vertex == session.mine:
        session.history.append({"actor": actor, "guess": vertex, "result": "hit_mine"})
        session.status = "human_lost" if actor == "human" else "human_won"
        session.live = session.live - {vertex}
        return {"vertex": vertex, "hit_mine": True, "surviving_component": []}
    # the game continues on the component that holds the mine
    adj = session.tree.adjacency()
    rest = session.live - {vertex}
    comp = {session.mine}
    stack = [session.mine]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w in rest and w not in comp:
                comp.add(w)
                stack.append(w)
    session.live = frozenset(comp)
    session.history.append({"actor": actor, "guess": vertex, "result": "miss"})
    session.turn = "engine" if actor == "human" else "human"
    return {
        "vertex": vertex,
        "hit_mine": False,
        "surviving_component": sorted(session.live),
    }


def _engine_move(session: GameSession) -> dict:
    vertex = choose_move(session.tree, session.live, session.engine, session._stream)
    return _apply_guess(session, "engine", vertex)


def hint_values(session: GameSession, mode: str | None = None) -> dict[int, Fraction]:
    """Per-vertex win values on the live component for the human's next move.

    Default mode: exploit values against a random engine, optimal values
    otherwise.
    """
    if mode is None:
        mode = "exploit" if session.engine == "random" else "optimal"
    sub, label_map = induced_subtree(session.tree, session.live)
    if mode == "optimal":
        per = optimal_moves(sub).per_move_values
    elif mode == "exploit":
        per = exploit_values(sub).per_move
    else:
        raise SessionError("invalid_mode", f"unknown hint mode '{mode}'")
    return {label_map[v]: val for v, val in per.items()}


class SessionStore:
    """In-memory sessions with an optional append-only event log per session."""

    def __init__(self, log_dir: str | Path | None = None):
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def _log(self, session: GameSession, event: dict) -> None:
        if session._log_path is None:
            return
        with session._log_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True, separators=(",", ":")) + "\n")

    def create(
        self,
        spec: str,
        engine: str = "optimal",
        human_first: bool = True,
        seed: int | None = None,
    ) -> GameSession:
        if seed is None:
            import secrets

            seed = secrets.randbits(63)
        session = _new_session(spec, engine, human_first, seed)
        if self.log_dir:
            session._log_path = self.log_dir / f"{session.id}.jsonl"
        self._log(
            session,
            {
                "event": "created",
                "spec": spec,
                "engine": engine,
                "human_first": human_first,
                "seed": seed,
            },
        )
        if not human_first:
            reply = _engine_move(session)
            self._log(session, {"event": "engine_guess", "vertex": reply["vertex"]})
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise SessionError("session_not_found", f"no session '{session_id}'")
        return session

    def guess(
        self,
        session_id: str,
        vertex: int,
        hints: bool = False,
        hint_mode: str | None = None,
    ) -> dict:
        session = self.get(session_id)
        with session._lock:
            if session.status != "active":
                raise SessionError("session_finished", "the game is over")
            if session.turn != "human":
                raise SessionError("not_your_turn", "waiting for the engine")
            if vertex not in session.live:
                raise SessionError("vertex_dead", f"vertex {vertex} is not live")
            outcome = _apply_guess(session, "human", vertex)
            self._log(session, {"event": "human_guess", "vertex": vertex})
            engine_reply = None
            if session.status == "active":
                engine_reply = _engine_move(session)
                self._log(
                    session, {"event": "engine_guess", "vertex": engine_reply["vertex"]}
                )
            if session.status != "active":
                self._log(
                    session,
                    {"event": "finished", "status": session.status, "mine": session.mine},
                )
            outcome["engine_reply"] = engine_reply
            if hints and session.status == "active":
                outcome["hints"] = hint_values(session, hint_mode)
            return outcome

    def replay_events(self, lines) -> GameSession:
        """Rebuild a session by re-driving creation + human guesses."""
        events = [json.loads(line) for line in lines if line.strip()]
        if not events or events[0].get("event") != "created":
            raise ValueError("event log must start with a 'created' event")
        head = events[0]
        session = _new_session(
            head["spec"], head["engine"], head["human_first"], head["seed"]
        )
        if not head["human_first"]:
            _engine_move(session)
        for ev in events[1:]:
            if ev.get("event") != "human_guess":
                continue
            _apply_guess(session, "human", ev["vertex"])
            if session.status == "active":
                _engine_move(session)
        return session

    def replay_file(self, path: str | Path) -> GameSession:
        with open(path, encoding="utf-8") as fh:
            return self.replay_events(fh)


def redacted_state(session: GameSession) -> dict:
    """Client-facing state; the mine appears only once the game is over."""
    state = {
        "id": session.id,
        "spec": session.spec,
        "kind": classify(session.tree)[0],
        "n": session.tree.n,
        "edges": [list(e) for e in session.tree.edges],
        "live": sorted(session.live),
        "turn": session.turn,
        "status": session.status,
        "engine": session.engine,
        "human_first": session.human_first,
        "history": list(session.history),
    }
    if session.status != "active":
        state["mine"] = session.mine
    return state
