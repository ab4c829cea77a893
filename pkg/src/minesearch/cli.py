"""Command-line entry point for analysis, simulation, play and serving."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .exploit import (
    EXACT_TABLE_CAP,
    best_first_guesses,
    dominance_check,
    exploit_values,
    limit_2a,
    monotonicity_check,
    path_tables,
    rank_order_check,
    verification_report,
)
from .optimal import optimal_moves, path_optimal_splits
from .recurrence import hyper_all, hyper_case, hyper_verification_report, poly
from .service import create_app, prob_json
from .session import SessionStore, hint_values
from .simulate import StrategySpec, exhaustive_value, monte_carlo
from .spider import SpiderState, coupling_check, nim_values
from .trees import is_path, parse_tree_spec


def _fmt(x: Fraction) -> str:
    return f"{x} = {float(x):.12g}"


def _per_move_json(per_move) -> dict:
    return {str(v): prob_json(val) for v, val in sorted(per_move.items())}


def cmd_solve(args) -> int:
    t = parse_tree_spec(args.tree)
    rep = optimal_moves(t)
    print(f"optimal first-mover value: {_fmt(rep.value)}")
    print(f"best moves: {sorted(rep.best_moves)}")
    if args.report:
        out = {
            "value": prob_json(rep.value),
            "best_moves": sorted(rep.best_moves),
            "per_move": _per_move_json(rep.per_move_values),
        }
        if is_path(t) and t.n >= 2:
            splits = path_optimal_splits(t.n)
            out["split_sizes"] = sorted(splits.pairs)
            out["split_guesses"] = sorted(splits.guesses)
            out["splits_consistent"] = splits.consistent
        print(json.dumps(out, indent=2))
    return 0


def cmd_exploit(args) -> int:
    t = parse_tree_spec(args.tree)
    rep = exploit_values(t)
    print(f"P (exploiter first):  {_fmt(rep.P)}")
    print(f"Q (exploiter second): {_fmt(rep.Q)}")
    print(f"best first moves: {sorted(rep.best_first_moves)}")
    if args.report:
        print(
            json.dumps(
                {
                    "P": prob_json(rep.P),
                    "Q": prob_json(rep.Q),
                    "best_moves": sorted(rep.best_first_moves),
                    "per_move": _per_move_json(rep.per_move),
                },
                indent=2,
            )
        )
    return 0


def cmd_tables(args) -> int:
    tab = path_tables(args.n, args.mode)
    if args.format == "csv":
        print("n,p_n,q_n,s_n,a_n")
        for n, p, q, s, a in tab.rows():
            print(f"{n},{float(p)!r},{float(q)!r},{float(s)!r},{float(a)!r}")
    else:
        rows = [
            {"n": n, "p": prob_json(p), "q": prob_json(q), "s": prob_json(s), "a": prob_json(a)}
            for n, p, q, s, a in tab.rows()
        ]
        print(json.dumps({"mode": tab.mode, "rows": rows}, indent=2))
    return 0


def cmd_limit(args) -> int:
    est, bound = limit_2a(args.n)
    print(f"2a estimate at N={args.n}: {est!r}")
    print(f"window certificate:      {bound!r}")
    print(f"rounded to 10 dp:        {round(est, 10)}")
    return 0


def cmd_check(args) -> int:
    run_all = not (args.monotone or args.rank or args.dominance or args.bounds)
    failures = 0
    if run_all or args.bounds:
        k = args.bounds or 200
        rep = verification_report(bounds_k=k, monotone_n=max(k + 2, 24))
        ok = rep["bounds_hold_3_to"] == k and rep["two_step_decay"] and rep["weighted_average_identity"]
        print(f"[{'PASS' if ok else 'FAIL'}] spread bounds + weighted-average identity (k <= {k})")
        print(f"       computed b_2 = {rep['b2']['computed']}")
        print(f"       {rep['b2']['note']}")
        failures += 0 if ok else 1
    if run_all or args.monotone:
        n = args.monotone or 1000
        tab = path_tables(n, "exact" if n <= EXACT_TABLE_CAP else "float")
        rep = monotonicity_check(tab)
        print(f"[{'PASS' if rep.ok else 'FAIL'}] p_n, q_n strictly increasing for 9 <= n <= {n}")
        if not rep.ok:
            print(f"       first violation: {rep.first_violation}")
            failures += 1
    if run_all or args.rank:
        tab = path_tables(24, "exact")
        ok = rank_order_check(tab)
        print(f"[{'PASS' if ok else 'FAIL'}] q rank-order clauses")
        failures += 0 if ok else 1
        guesses_ok = all(best_first_guesses(n) == {2, n - 1} for n in range(3, 31))
        print(f"[{'PASS' if guesses_ok else 'FAIL'}] best first guesses are {{2, n-1}} for 3 <= n <= 30")
        failures += 0 if guesses_ok else 1
    if run_all or args.dominance:
        n_max = args.dominance or 8
        rep = dominance_check(n_max)
        print(
            f"[{'PASS' if rep.passed else 'FAIL'}] star dominance over "
            f"{rep.checked} isomorphism classes (n <= {n_max})"
        )
        if not rep.passed:
            print(f"       violations: {rep.violations}")
            failures += 1
    return 1 if failures else 0


_POLY_TOKENS = {"n+2": poly(2, 1), "n-1": poly(-1, 1), "n-2": poly(-2, 1), "1": poly(1)}


def _case_json(case) -> dict:
    return {
        "A": str(case.A_choice),
        "B": str(case.B_choice),
        "P": [str(p) for p in case.P],
        "m": case.m,
        "alphas": [str(a) for a in case.alphas],
        "z_roots": [str(z) for z in case.z_roots],
        "b_levels": [[str(b) for b in lvl] for lvl in case.b_schedule],
        "n_polynomial": str(case.n_polynomial) if case.n_polynomial else None,
        "degree_candidates": list(case.degree_candidates),
        "poly_solutions": [str(p) for p in case.poly_solutions],
    }


def cmd_hyper(args) -> int:
    if args.verify:
        rep = hyper_verification_report()
        for key, val in rep.items():
            if key in ("notes", "ok"):
                continue
            print(f"[{'PASS' if val else 'FAIL'}] {key}")
        for note in rep["notes"]:
            print(note)
        print(f"overall: {'PASS' if rep['ok'] else 'FAIL'}")
        return 0 if rep["ok"] else 1
    if args.all:
        print(json.dumps([_case_json(c) for c in hyper_all()], indent=2))
        return 0
    if not args.case:
        print("hyper: one of --case A,B / --all / --verify is required", file=sys.stderr)
        return 2
    toks = [tok.strip() for tok in args.case.split(",")]
    if len(toks) != 2 or toks[0] not in ("n+2", "1") or toks[1] not in ("n-1", "n-2", "1"):
        print(f"hyper: bad case '{args.case}' (A in n+2|1, B in n-1|n-2|1)", file=sys.stderr)
        return 2
    case = hyper_case(_POLY_TOKENS[toks[0]], _POLY_TOKENS[toks[1]])
    print(json.dumps(_case_json(case), indent=2))
    return 0


def cmd_simulate(args) -> int:
    t = parse_tree_spec(args.tree)
    first, second = StrategySpec(args.first), StrategySpec(args.second)
    if args.exact:
        val = exhaustive_value(t, first, second)
        print(f"exact first-player win probability: {_fmt(val)}")
        return 0
    res = monte_carlo(t, first, second, args.trials, args.seed)
    print(
        f"trials={res.trials} wins={res.wins} mean={res.mean:.6f} "
        f"stderr={res.stderr:.6f} seed={res.seed}"
    )
    return 0


def cmd_spider(args) -> int:
    legs = [int(x) for x in args.legs.split(",")]
    vals = nim_values(SpiderState.rooted(legs))
    print(f"optimal (both optimal): {_fmt(vals.optimal)}")
    print(f"P (exploiter first):    {_fmt(vals.P)}")
    print(f"Q (exploiter second):   {_fmt(vals.Q)}")
    if args.couple:
        ok = coupling_check(legs)
        print(f"[{'PASS' if ok else 'FAIL'}] coupling against the tree solvers")
        return 0 if ok else 1
    return 0


def cmd_play(args) -> int:
    store = SessionStore()
    session = store.create(args.tree, args.engine, not args.engine_first, args.seed)
    print(f"game on {args.tree} vs engine '{args.engine}' "
          f"({'engine' if args.engine_first else 'you'} first)")
    while session.status == "active":
        live = sorted(session.live)
        print(f"\nlive vertices: {live}")
        if args.hints:
            hints = hint_values(session)
            print("hints: " + ", ".join(f"{v}:{float(x):.3f}" for v, x in sorted(hints.items())))
        try:
            raw = input("your guess> ").strip()
        except EOFError:
            print("bye")
            return 0
        if raw in ("q", "quit", "exit"):
            return 0
        try:
            vertex = int(raw)
        except ValueError:
            print(f"not a vertex: '{raw}'")
            continue
        if vertex not in session.live:
            print("that vertex is not live")
            continue
        outcome = store.guess(session.id, vertex)
        if outcome["hit_mine"]:
            print(f"vertex {vertex} was the mine - you lose.")
            break
        print(f"safe. surviving component: {outcome['surviving_component']}")
        reply = outcome["engine_reply"]
        if reply:
            if reply["hit_mine"]:
                print(f"engine guessed {reply['vertex']} - it was the mine. You win!")
            else:
                print(f"engine guessed {reply['vertex']}; game continues.")
    print(f"result: {session.status} (mine was {session.mine})")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    store = SessionStore(log_dir=args.log_dir)
    app = create_app(store, frontend_dir=args.frontend)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="minesearch",
        description="Solvers, simulators and a play service for the misère "
        "vertex-search game on trees.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal-vs-optimal value and moves")
    p.add_argument("tree")
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exploit", help="random-vs-exploitative values")
    p.add_argument("tree")
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=cmd_exploit)

    p = sub.add_parser("tables", help="path sequence tables")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "float"], default="exact")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("limit", help="limiting win probability with certificate")
    p.add_argument("--n", type=int, default=10**6)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("check", help="sequence and dominance verification")
    p.add_argument("--monotone", type=int, nargs="?", const=1000, default=0)
    p.add_argument("--rank", action="store_true")
    p.add_argument("--dominance", type=int, nargs="?", const=8, default=0)
    p.add_argument("--bounds", type=int, nargs="?", const=200, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hyper", help="hypergeometric-solution casework")
    p.add_argument("--case", help="A,B with A in n+2|1 and B in n-1|n-2|1")
    p.add_argument("--all", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_hyper)

    p = sub.add_parser("simulate", help="Monte Carlo or exact game simulation")
    p.add_argument("tree")
    p.add_argument("--first", required=True)
    p.add_argument("--second", required=True)
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("spider", help="leg-multiset spider engine")
    p.add_argument("--legs", required=True)
    p.add_argument("--couple", action="store_true")
    p.set_defaults(func=cmd_spider)

    p = sub.add_parser("play", help="interactive terminal game")
    p.add_argument("tree")
    p.add_argument("--engine", default="optimal")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--engine-first", action="store_true")
    p.add_argument("--hints", action="store_true")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the JSON HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--log-dir", default=None)
    p.add_argument("--frontend", default=None)
    p.set_defaults(func=cmd_serve)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
