import json

import pytest

from minesearch.cli import main


def test_solve(capsys):
    assert main(["solve", "path:7"]) == 0
    out = capsys.readouterr().out
    assert "4/7" in out and "[2, 6]" in out


def test_solve_report(capsys):
    assert main(["solve", "path:6", "--report"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out[out.index("{"):])
    assert payload["best_moves"] == [1, 2, 5, 6]
    assert payload["split_guesses"] == [1, 2, 5, 6]
    assert payload["splits_consistent"] is True


def test_exploit(capsys):
    assert main(["exploit", "star:5"]) == 0
    out = capsys.readouterr().out
    assert "4/5" in out and "17/25" in out


def test_tables_csv(capsys):
    assert main(["tables", "--n", "10", "--mode", "exact", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,p_n,q_n,s_n,a_n"
    assert len(lines) == 11
    row10 = lines[10].split(",")
    assert row10[0] == "10"
    assert abs(float(row10[2]) - 0.5982539682539684) < 1e-12


def test_tables_json(capsys):
    assert main(["tables", "--n", "5", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["rows"][4]["p"]["fraction"] == "8/15"


def test_limit(capsys):
    assert main(["limit", "--n", "1000"]) == 0
    assert "0.5988890438" in capsys.readouterr().out


def test_check_all(capsys):
    assert main(["check", "--bounds", "40", "--monotone", "100",
                 "--rank", "--dominance", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 5
    assert "1/72" in out and "1/120" in out


def test_hyper_verify(capsys):
    assert main(["hyper", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out
    assert "(n+1)(n+2)" in out  # the erratum note
    assert "alpha_0 = 2" in out


def test_hyper_case(capsys):
    assert main(["hyper", "--case", "n+2,n-2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n_polynomial"] == "n^2 + 5*n + 6"
    assert payload["b_levels"][-1] == ["6", "6", "2"]
    assert main(["hyper", "--case", "n+5,1"]) == 2


def test_simulate_exact(capsys):
    assert main(["simulate", "path:5", "--first", "fixed_second_vertex",
                 "--second", "random", "--exact"]) == 0
    assert "8/15" in capsys.readouterr().out


def test_simulate_mc(capsys):
    assert main(["simulate", "path:4", "--first", "optimal", "--second", "optimal",
                 "--trials", "20000", "--seed", "9"]) == 0
    out = capsys.readouterr().out
    assert "trials=20000" in out


def test_spider(capsys):
    assert main(["spider", "--legs", "2,2", "--couple"]) == 0
    out = capsys.readouterr().out
    assert "2/5" in out and "[PASS]" in out


def test_play_scripted(capsys, monkeypatch):
    from itertools import cycle

    feed = cycle(["1", "2", "3", "4", "5", "6", "7"])
    monkeypatch.setattr("builtins.input", lambda *_: next(feed))
    assert main(["play", "path:7", "--engine", "random", "--seed", "77"]) == 0
    out = capsys.readouterr().out
    assert "result:" in out


def test_bad_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
