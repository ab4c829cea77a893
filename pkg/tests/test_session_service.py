import json
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from minesearch import rng
from minesearch.optimal import path_value_closed
from minesearch.service import create_app
from minesearch.session import SessionError, SessionStore, hint_values, redacted_state
from minesearch.simulate import choose_move


@pytest.fixture()
def store():
    return SessionStore()


@pytest.fixture()
def client():
    return TestClient(create_app(SessionStore()))


def test_same_seed_same_mine(store):
    a = store.create("path:7", "random", True, seed=99)
    b = store.create("path:7", "random", True, seed=99)
    assert a.mine == b.mine
    c = store.create("path:7", "random", True, seed=100)
    assert a.id != b.id
    assert {a.mine, c.mine} <= set(range(1, 8))


def test_engine_first_moves_on_creation(store):
    s = store.create("star:5", "random", False, seed=3)
    assert len(s.history) == 1
    assert s.history[0]["actor"] == "engine"
    if s.status == "active":
        assert s.turn == "human"


def test_hit_mine_loses(store):
    s = store.create("path:5", "optimal", True, seed=11)
    out = store.guess(s.id, s.mine)
    assert out["hit_mine"] is True
    assert s.status == "human_lost"
    assert out["engine_reply"] is None


def test_p2_win_flow(store):
    for seed in range(10):
        s = store.create("path:2", "random", True, seed=seed)
        other = next(v for v in s.live if v != s.mine)
        out = store.guess(s.id, other)
        assert out["hit_mine"] is False
        assert out["engine_reply"]["hit_mine"] is True
        assert s.status == "human_won"


def test_star_hub_guess_forces_engine_loss(store):
    s = None
    for seed in range(60):
        cand = store.create("star:6", "optimal", True, seed=seed)
        if cand.mine != 1:
            s = cand
            break
    out = store.guess(s.id, 1)
    # the game continued on the singleton holding the mine; engine had to take it
    assert out["surviving_component"] == [s.mine]
    assert out["engine_reply"]["hit_mine"] is True
    assert s.status == "human_won"
    assert s.history[-1] == {"actor": "engine", "guess": s.mine, "result": "hit_mine"}


def test_guess_errors(store):
    s = store.create("path:4", "optimal", True, seed=2)
    with pytest.raises(SessionError) as e:
        store.guess(s.id, 99)
    assert e.value.code == "vertex_dead"
    with pytest.raises(SessionError) as e:
        store.guess("missing", 1)
    assert e.value.code == "session_not_found"
    while s.status == "active":
        store.guess(s.id, sorted(s.live)[0])
    with pytest.raises(SessionError) as e:
        store.guess(s.id, 1)
    assert e.value.code == "session_finished"


def test_invalid_specs_and_caps(store):
    with pytest.raises(SessionError) as e:
        store.create("blob:4", "optimal", True, seed=1)
    assert e.value.code == "invalid_tree"
    with pytest.raises(SessionError) as e:
        store.create("star:5", "fixed_second_vertex", True, seed=1)
    assert e.value.code == "cap_exceeded"
    with pytest.raises(SessionError) as e:
        store.create("edges:1-2,1-3,1-4,2-5,2-6,3-7,3-8,4-9,4-10,5-11,5-12,6-13",
                     "optimal", True, seed=1)
    assert e.value.code == "cap_exceeded"
    # same 13-vertex generic tree is fine with a random engine
    s = store.create("edges:1-2,1-3,1-4,2-5,2-6,3-7,3-8,4-9,4-10,5-11,5-12,6-13",
                     "random", True, seed=1)
    assert s.status == "active"


def test_hints(store):
    s = store.create("path:7", "optimal", True, seed=4)
    hints = hint_values(s)
    top = max(hints.values())
    assert {v for v, x in hints.items() if x == top} == {2, 6}
    hints = hint_values(s, mode="exploit")
    top = max(hints.values())
    assert {v for v, x in hints.items() if x == top} == {2, 6}
    assert hints[2] == Fraction(4, 7)


def test_replay_determinism_logged(tmp_path):
    store = SessionStore(log_dir=tmp_path)
    fresh = SessionStore()  # replayer without logging
    for i in range(25):
        spec = ["path:7", "star:6", "spider:2,2,1", "path:12"][i % 4]
        engine = ["optimal", "random", "exploit_dp"][i % 3]
        s = store.create(spec, engine, human_first=(i % 2 == 0), seed=5000 + i)
        mover = rng.SplitMix64.from_seed(10_000 + i)
        while s.status == "active":
            live = sorted(s.live)
            store.guess(s.id, live[mover.randrange(len(live))])
        replayed = fresh.replay_file(tmp_path / f"{s.id}.jsonl")
        assert replayed.history_json() == s.history_json()
        assert replayed.status == s.status
        assert replayed.mine == s.mine


def test_redaction(store):
    s = store.create("path:6", "optimal", True, seed=8)
    state = redacted_state(s)
    assert "mine" not in json.dumps(state)
    while s.status == "active":
        store.guess(s.id, sorted(s.live)[0])
    state = redacted_state(s)
    assert state["mine"] == s.mine  # revealed once finished


def test_optimal_line_converges_to_closed_form():
    # human simulated by the solver against the optimal engine
    n, sessions = 8, 3000
    store = SessionStore()
    wins = 0
    for i in range(sessions):
        s = store.create(f"path:{n}", "optimal", True, seed=70_000 + i)
        while s.status == "active":
            v = choose_move(s.tree, s.live, "optimal")
            store.guess(s.id, v)
        wins += s.status == "human_won"
    exact = float(path_value_closed(n))
    stderr = (exact * (1 - exact) / sessions) ** 0.5
    assert abs(wins / sessions - exact) <= 4 * stderr


# ---------------------------------------------------------------------------
# HTTP API


def test_session_endpoints(client):
    r = client.post("/api/session", json={"tree": "path:7", "engine": "optimal", "seed": 5})
    assert r.status_code == 200
    body = r.json()
    sid = body["id"]
    assert body["state"]["live"] == [1, 2, 3, 4, 5, 6, 7]
    assert "mine" not in json.dumps(body)

    r = client.get(f"/api/session/{sid}")
    assert r.status_code == 200 and r.json()["status"] == "active"

    r = client.post(f"/api/session/{sid}/guess", json={"vertex": 99})
    assert r.status_code == 400 and r.json()["error"] == "vertex_dead"

    state = client.get(f"/api/session/{sid}").json()
    vertex = state["live"][0]
    r = client.post(f"/api/session/{sid}/guess", json={"vertex": vertex, "hints": True})
    assert r.status_code == 200
    out = r.json()
    assert out["vertex"] == vertex
    if out["state"]["status"] == "active":
        assert out["state"]["turn"] == "human"
        assert "hints" in out
        r2 = client.post(f"/api/session/{sid}/guess", json={"vertex": vertex})
        assert r2.status_code in (400, 409)


def test_finished_session_conflict(client):
    r = client.post("/api/session", json={"tree": "path:2", "engine": "random", "seed": 0})
    sid = r.json()["id"]
    state = r.json()["state"]
    for v in state["live"]:
        res = client.post(f"/api/session/{sid}/guess", json={"vertex": v})
        if res.status_code == 200 and res.json()["state"]["status"] != "active":
            break
    r = client.get(f"/api/session/{sid}").json()
    if r["status"] != "active":
        res = client.post(f"/api/session/{sid}/guess", json={"vertex": 1})
        assert res.status_code == 409
        assert res.json()["error"] == "session_finished"


def test_not_found(client):
    assert client.get("/api/session/nope").status_code == 404
    assert client.get("/api/session/nope").json()["error"] == "session_not_found"


def test_invalid_tree_error(client):
    r = client.post("/api/session", json={"tree": "wheel:9"})
    assert r.status_code == 400 and r.json()["error"] == "invalid_tree"
    r = client.get("/api/analyze", params={"tree": "wheel:9"})
    assert r.status_code == 400 and r.json()["error"] == "invalid_tree"


def test_analyze_endpoint(client):
    r = client.get("/api/analyze", params={"tree": "path:7", "mode": "optimal"})
    body = r.json()
    assert body["best_moves"] == [2, 6]
    assert body["value"] == {"fraction": "4/7", "decimal": 4 / 7}
    r = client.get("/api/analyze", params={"tree": "star:5", "mode": "exploit"})
    body = r.json()
    assert body["P"]["fraction"] == "4/5"
    assert body["Q"]["fraction"] == "17/25"
    r = client.get("/api/analyze", params={"tree": "path:7", "mode": "psychic"})
    assert r.status_code == 400


def test_tables_endpoint(client):
    r = client.get("/api/tables", params={"n": 10})
    rows = r.json()["rows"]
    assert len(rows) == 10
    assert rows[4]["p"]["fraction"] == "8/15"
    assert rows[9]["q"]["decimal"] == pytest.approx(0.5982539682539684, rel=1e-12)
    assert r.json()["mode"] == "exact"
    r = client.get("/api/tables", params={"n": 5000, "mode": "exact"})
    assert r.status_code == 400 and r.json()["error"] == "cap_exceeded"


def test_hints_endpoint(client):
    r = client.post("/api/session", json={"tree": "path:7", "engine": "optimal", "seed": 5})
    sid = r.json()["id"]
    hints = client.get(f"/api/session/{sid}/hints").json()["hints"]
    best = max(pj["decimal"] for pj in hints.values())
    assert sorted(v for v, pj in hints.items() if pj["decimal"] == best) == ["2", "6"]


def test_concurrent_guesses_are_serialized(store):
    import threading

    s = store.create("path:12", "random", True, seed=41)
    errors = []
    applied = []

    def hammer(v):
        try:
            store.guess(s.id, v)
            applied.append(v)
        except SessionError as e:
            errors.append(e.code)

    while s.status == "active":
        live = sorted(s.live)
        threads = [threading.Thread(target=hammer, args=(v,)) for v in live[:4]]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
    # per round at most one vertex can be applied per human turn; the rest
    # must fail with a clean game-level code
    assert set(errors) <= {"not_your_turn", "vertex_dead", "session_finished"}
    assert s.history_json()  # history remains serializable/consistent
    replays = SessionStore().replay_events(
        [
            '{"event":"created","spec":"path:12","engine":"random","human_first":true,"seed":41}'
        ]
        + [
            '{"event":"human_guess","vertex":%d}' % h["guess"]
            for h in s.history
            if h["actor"] == "human"
        ]
    )
    assert replays.history_json() == s.history_json()
