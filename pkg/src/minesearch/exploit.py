"""Random-vs-exploitative analysis.

R guesses uniformly at random; X best-responds.  P(T) and Q(T) are X's win
probabilities moving first and second:

    P(T) = max_v sum_S (n_S/n) * Q(S)
    Q(T) = (1/n) * sum_v (1/n + sum_S (n_S/n) * P(S))

with P(single) = 0, Q(single) = 1 (whoever faces a lone vertex must guess
the mine).  For paths under X's fixed guess-the-second-vertex strategy the
sequences p_n (X first), q_n (X second) and s_n = sum i*p_i satisfy

    s_n = s_{n-1} + 2/(n-2) * s_{n-3} + 2,       s_1 = 0, s_2 = 1, s_3 = 3
    p_n = (s_n - s_{n-1}) / n
    q_n = (1 + 2*s_{n-1}/n) / n

and the normalised estimates a_k = (s_k + 2(k+1)) / (k^2 + 7k + 6) converge
to a limit `a` with 2a = lim p_n = lim q_n.  The spread b_k of three
consecutive estimates bounds every later deviation, giving a certified
error window that shrinks factorially.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .trees import (
    Tree,
    all_trees,
    canonical_key,
    classify,
    is_path,
    is_star,
    path_order,
    split_at,
)
from .optimal import GENERIC_CAP, SizeCapError

EXACT_TABLE_CAP = 2000
FLOAT_TABLE_CAP = 10**7


@dataclass(frozen=True)
class ExploitReport:
    P: Fraction
    Q: Fraction
    best_first_moves: frozenset[int]
    per_move: dict[int, Fraction]


# ---------------------------------------------------------------------------
# path tables under the fixed second-vertex strategy


class PathTables:
    """Sequences s, p, q (1..N), a (0..N) and b (0..N-2).

    `mode` is "exact" (Fractions) or "float" (IEEE doubles, same update
    order as the exact recurrence so runs are reproducible).
    """

    def __init__(self, mode: str, s, p, q, a, b):
        self.mode = mode
        self.N = len(p) - 1
        self._s, self._p, self._q, self._a, self._b = s, p, q, a, b

    def s(self, n: int):
        return self._s[n]

    def p(self, n: int):
        if n < 1:
            raise IndexError("p defined for n >= 1")
        return self._p[n]

    def q(self, n: int):
        if n < 1:
            raise IndexError("q defined for n >= 1")
        return self._q[n]

    def a(self, k: int):
        return self._a[k]

    def b(self, k: int):
        return self._b[k]

    def rows(self):
        """(n, p_n, q_n, s_n, a_n) for n = 1..N, matching the table layout."""
        for n in range(1, self.N + 1):
            yield n, self._p[n], self._q[n], self._s[n], self._a[n]


def path_tables(N: int, mode: str = "exact") -> PathTables:
    """Build the sequence tables up to index N."""
    if N < 3:
        raise ValueError("N >= 3")
    if mode == "exact":
        if N > EXACT_TABLE_CAP:
            raise ValueError(f"exact mode capped at N={EXACT_TABLE_CAP}")
        s: list = [Fraction(0), Fraction(0), Fraction(1), Fraction(3)]
        for n in range(4, N + 1):
            s.append(s[n - 1] + Fraction(2, n - 2) * s[n - 3] + 2)
        p = [None] + [(s[n] - s[n - 1]) / n for n in range(1, N + 1)]
        q = [None] + [Fraction(1, n) * (1 + Fraction(2, n) * s[n - 1]) for n in range(1, N + 1)]
        a = [(s[k] + 2 * (k + 1)) / (k * k + 7 * k + 6) for k in range(0, N + 1)]
    elif mode == "float":
        if N > FLOAT_TABLE_CAP:
            raise ValueError(f"float mode capped at N={FLOAT_TABLE_CAP}")
        s = np.empty(N + 1)
        s[0] = 0.0
        s[1] = 0.0
        s[2] = 1.0
        s[3] = 3.0
        for n in range(4, N + 1):
            s[n] = 2 + s[n - 1] + 2 * s[n - 3] / (n - 2)
        p = np.empty(N + 1)
        q = np.empty(N + 1)
        a = np.empty(N + 1)
        p[0] = np.nan
        q[0] = np.nan
        p[1] = 0.0
        q[1] = 1.0
        for n in range(2, N + 1):
            p[n] = (s[n] - s[n - 1]) / n
            q[n] = (1 / n) * (1 + (2 / n) * s[n - 1])
        for k in range(0, N + 1):
            a[k] = (s[k] + 2 * k + 2) / (k * k + 7 * k + 6)
    else:
        raise ValueError(f"unknown mode '{mode}'")
    b = [
        max(abs(a[k] - a[k + 1]), abs(a[k + 1] - a[k + 2]), abs(a[k] - a[k + 2]))
        for k in range(0, N - 1)
    ]
    return PathTables(mode, s, p, q, a, b)


def limit_2a(N: int) -> tuple[float, float]:
    """(estimate, error_bound) for the limiting win probability 2a.

    Streams the float recurrence in O(1) state; the estimate is 2*a_N and
    the certificate is twice the spread b_{N-2} of the last three a's:
    the limit lies inside that window because every later estimate is a
    weighted average of earlier ones.  The spread is taken from the exact
    table when N is within its cap, from the float stream otherwise (it
    shrinks factorially and underflows well before the float cap).
    """
    if N < 100:
        raise ValueError("N >= 100")
    s3, s2, s1 = 0.0, 1.0, 3.0  # s_{n-3}, s_{n-2}, s_{n-1} rolling
    for n in range(4, N + 1):
        s3, s2, s1 = s2, s1, 2 + s1 + 2 * s3 / (n - 2)
    estimate = 2 * (s1 + 2 * N + 2) / (N * N + 7 * N + 6)
    if N <= EXACT_TABLE_CAP:
        spread = float(path_tables(N, "exact").b(N - 2))
    else:
        a_vals = [
            (sk + 2 * k + 2) / (k * k + 7 * k + 6)
            for k, sk in ((N - 2, s3), (N - 1, s2), (N, s1))
        ]
        spread = max(
            abs(a_vals[0] - a_vals[1]),
            abs(a_vals[1] - a_vals[2]),
            abs(a_vals[0] - a_vals[2]),
        )
    return estimate, 2 * spread


def b_bound_closed(k: int) -> Fraction:
    """Closed-form upper bound for the estimate spread b_k (k >= 0)."""
    if k < 0:
        raise ValueError("k >= 0")
    if k % 2 == 0:
        l = k // 2
        return Fraction(2**l, 21 * math.factorial(l + 1))
    m = (k - 1) // 2
    dd = 1
    x = 2 * m + 3
    while x > 0:
        dd *= x
        x -= 2
    return Fraction(15, 252) * Fraction(4**m, dd)


# ---------------------------------------------------------------------------
# sequence checks


@dataclass(frozen=True)
class MonotonicityReport:
    ok: bool
    threshold: int
    upto: int
    first_violation: tuple[str, int] | None


def monotonicity_check(tables: PathTables, threshold: int = 9) -> MonotonicityReport:
    """Verify p_n and q_n strictly increase for threshold <= n <= N."""
    if tables.N < 24:
        raise ValueError("tables must cover N >= 24")
    for n in range(threshold + 1, tables.N + 1):
        if not tables.p(n) > tables.p(n - 1):
            return MonotonicityReport(False, threshold, tables.N, ("p", n))
        if not tables.q(n) > tables.q(n - 1):
            return MonotonicityReport(False, threshold, tables.N, ("q", n))
    return MonotonicityReport(True, threshold, tables.N, None)


def rank_order_check(tables: PathTables) -> bool:
    """Rank structure of the q sequence that pins down the best first guesses.

    1. q_1 > q_4 > q_5 > q_8 and these dominate every other entry;
    2. outside indices {1, 4, 5, 7, 8} the sequence is increasing;
    3. q_23 > q_7 > q_22.
    """
    if tables.N < 24:
        raise ValueError("tables must cover N >= 24")
    q = tables.q
    if not (q(1) > q(4) > q(5) > q(8)):
        return False
    special = {1, 4, 5, 8}
    if any(q(i) >= q(8) for i in range(1, tables.N + 1) if i not in special):
        return False
    plain = [i for i in range(1, tables.N + 1) if i not in {1, 4, 5, 7, 8}]
    if any(q(i) <= q(j) for j, i in zip(plain, plain[1:])):
        return False
    return q(23) > q(7) > q(22)


def F_values(k: int, tables: PathTables) -> dict[int, Fraction]:
    """F(x) = (x-1) q_{x-1} + (k+1-x) q_{k+1-x} over 1 <= x <= k+1.

    n*F(x)/n is X's win probability when they open with x on a path of
    k+1 vertices and then keep playing the fixed strategy; the argmax is
    {2, k} throughout the verified range.
    """
    if k + 1 > tables.N:
        raise ValueError("tables do not cover k")
    zero = Fraction(0) if tables.mode == "exact" else 0.0
    out: dict[int, Fraction] = {}
    for x in range(1, k + 2):
        v = zero
        if x - 1 >= 1:
            v = v + (x - 1) * tables.q(x - 1)
        if k + 1 - x >= 1:
            v = v + (k + 1 - x) * tables.q(k + 1 - x)
        out[x] = v
    return out


# ---------------------------------------------------------------------------
# optimal play for X on paths (mutual recursion, no fixed-strategy input)

_path_lock = threading.Lock()
_x_first: list[Fraction] = [None, Fraction(0)]  # X to move on P_n
_r_first: list[Fraction] = [None, Fraction(1)]  # R to move on P_n
_x_argmax: list[frozenset[int]] = [None, frozenset({1})]


def _extend_path_exploit(N: int) -> None:
    with _path_lock:
        for n in range(len(_x_first), N + 1):
            tot = Fraction(0)
            for i in range(1, n + 1):
                term = Fraction(1, n)
                if i - 1 >= 1:
                    term += Fraction(i - 1, n) * _x_first[i - 1]
                if n - i >= 1:
                    term += Fraction(n - i, n) * _x_first[n - i]
                tot += Fraction(1, n) * term
            _r_first.append(tot)
            best = Fraction(-1)
            best_set: set[int] = set()
            for i in range(1, n + 1):
                v = Fraction(0)
                if i - 1 >= 1:
                    v += Fraction(i - 1, n) * _r_first[i - 1]
                if n - i >= 1:
                    v += Fraction(n - i, n) * _r_first[n - i]
                if v > best:
                    best, best_set = v, {i}
                elif v == best:
                    best_set.add(i)
            _x_first.append(best)
            _x_argmax.append(frozenset(best_set))


def best_first_guesses(n: int) -> set[int]:
    """Argmax first guesses for X on a path of n vertices, X playing
    optimally at every later turn as well."""
    if n < 1:
        raise ValueError("n >= 1")
    _extend_path_exploit(n)
    return set(_x_argmax[n])


def _path_exploit_position_values(n: int) -> list[Fraction]:
    _extend_path_exploit(n)
    out = []
    for i in range(1, n + 1):
        v = Fraction(0)
        if i - 1 >= 1:
            v += Fraction(i - 1, n) * _r_first[i - 1]
        if n - i >= 1:
            v += Fraction(n - i, n) * _r_first[n - i]
        out.append(v)
    return out


def _path_PQ(n: int) -> tuple[Fraction, Fraction]:
    _extend_path_exploit(n)
    return _x_first[n], _r_first[n]


# ---------------------------------------------------------------------------
# stars (size recursion) and the closed forms


def star_PQ(n: int) -> tuple[Fraction, Fraction]:
    """Closed forms P(S_n) = (n-1)/n, Q(S_n) = (n^2 - 2n + 2)/n^2."""
    if n < 1:
        raise ValueError("n >= 1")
    return Fraction(n - 1, n), Fraction(n * n - 2 * n + 2, n * n)


_star_lock = threading.Lock()
_star_P: dict[int, Fraction] = {1: Fraction(0)}
_star_Q: dict[int, Fraction] = {1: Fraction(1)}


def _star_PQ_dp(n: int) -> tuple[Fraction, Fraction]:
    with _star_lock:
        for m in range(2, n + 1):
            if m in _star_P:
                continue
            hub = Fraction(m - 1, m)  # each leaf singleton has Q = 1
            leaf = Fraction(m - 1, m) * _star_Q[m - 1]
            _star_P[m] = max(hub, leaf)
            rq = Fraction(1, m) * (
                Fraction(1, m)  # R removes the hub: singletons, P = 0
                + (m - 1) * (Fraction(1, m) + Fraction(m - 1, m) * _star_P[m - 1])
            )
            _star_Q[m] = rq
    return _star_P[n], _star_Q[n]


# ---------------------------------------------------------------------------
# generic trees

_generic_lock = threading.Lock()
_generic_P: dict[str, Fraction] = {}
_generic_Q: dict[str, Fraction] = {}


def _gen_P(t: Tree) -> Fraction:
    key = canonical_key(t)
    with _generic_lock:
        cached = _generic_P.get(key)
    if cached is not None:
        return cached
    val = Fraction(0) if t.n == 1 else max(_gen_move_value(t, v) for v in t.vertices())
    with _generic_lock:
        _generic_P[key] = val
    return val


def _gen_move_value(t: Tree, v: int) -> Fraction:
    val = Fraction(0)
    for part in split_at(t, v).parts:
        val += Fraction(part.tree.n, t.n) * _gen_Q(part.tree)
    return val


def _gen_Q(t: Tree) -> Fraction:
    key = canonical_key(t)
    with _generic_lock:
        cached = _generic_Q.get(key)
    if cached is not None:
        return cached
    n = t.n
    tot = Fraction(0)
    for v in t.vertices():
        term = Fraction(1, n)
        for part in split_at(t, v).parts:
            term += Fraction(part.tree.n, n) * _gen_P(part.tree)
        tot += Fraction(1, n) * term
    with _generic_lock:
        _generic_Q[key] = tot
    return tot


def exploit_values_generic(t: Tree) -> ExploitReport:
    """Generic-tree DP with no shape routing (size-capped)."""
    if t.n > GENERIC_CAP:
        raise SizeCapError(f"generic exploit solver capped at n={GENERIC_CAP}")
    per_move = (
        {1: Fraction(0)}
        if t.n == 1
        else {v: _gen_move_value(t, v) for v in t.vertices()}
    )
    P = max(per_move.values())
    best = frozenset(v for v, x in per_move.items() if x == P)
    return ExploitReport(P=P, Q=_gen_Q(t), best_first_moves=best, per_move=per_move)


def exploit_values(t: Tree) -> ExploitReport:
    """P, Q and per-move values for X on `t`, routed by shape."""
    if is_path(t):
        vals = _path_exploit_position_values(t.n)
        per_move = {lab: vals[i] for i, lab in enumerate(path_order(t))}
        P, Q = _path_PQ(t.n)
    elif is_star(t):
        P, Q = _star_PQ_dp(t.n)
        hub = max(t.degrees().items(), key=lambda kv: kv[1])[0]
        leaf_val = Fraction(t.n - 1, t.n) * _star_PQ_dp(t.n - 1)[1]
        per_move = {
            v: Fraction(t.n - 1, t.n) if v == hub else leaf_val for v in t.vertices()
        }
    else:
        kind, _ = classify(t)
        if kind == "spider":
            from .spider import spider_exploit_report

            return spider_exploit_report(t)
        if t.n > GENERIC_CAP:
            raise SizeCapError(f"generic exploit solver capped at n={GENERIC_CAP}")
        return exploit_values_generic(t)
    best = frozenset(v for v, x in per_move.items() if x == P)
    return ExploitReport(P=P, Q=Q, best_first_moves=best, per_move=per_move)


# ---------------------------------------------------------------------------
# dominance of the star shape


@dataclass
class DominanceReport:
    n_max: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def dominance_check(n_max: int) -> DominanceReport:
    """P(T) <= P(S_n) and Q(T) <= Q(S_n) over every isomorphism class."""
    if n_max > 10:
        raise ValueError("n_max <= 10")
    report = DominanceReport(n_max=n_max)
    for n in range(1, n_max + 1):
        star_p, star_q = star_PQ(n)
        for t in all_trees(n):
            rep = exploit_values_generic(t)
            report.checked += 1
            if rep.P > star_p or rep.Q > star_q:
                report.violations.append((n, t.edges, rep.P, rep.Q))
    return report


# ---------------------------------------------------------------------------
# verification report (surfaces the b_2 note alongside the checks)

B2_NOTE = (
    "note: b_2 computed from its definition (max pairwise difference of "
    "a_2, a_3, a_4) is 1/72, not 1/120; 1/120 is |a_2 - a_4| alone, which "
    "skips the a_3 comparisons."
)


def verification_report(
    bounds_k: int = 200,
    monotone_n: int = 1000,
    dominance_n: int | None = None,
) -> dict:
    """Run the sequence-level checks and return a pass/fail summary."""
    exact = path_tables(max(bounds_k + 2, 24), "exact")
    bounds_ok = all(exact.b(k) <= b_bound_closed(k) for k in range(3, bounds_k + 1))
    decay_ok = all(
        exact.b(k - 1) <= Fraction(4, k + 1) * exact.b(k - 3)
        for k in range(3, bounds_k + 1)
    )
    weighted_ok = all(
        exact.a(k)
        == (exact.a(k - 1) * k * (k + 5) + 2 * exact.a(k - 3) * (k + 3))
        / ((k + 6) * (k + 1))
        for k in range(3, bounds_k + 1)
    )
    big = path_tables(monotone_n, "float") if monotone_n > EXACT_TABLE_CAP else path_tables(monotone_n, "exact")
    mono = monotonicity_check(big)
    rank = rank_order_check(exact)
    report = {
        "b2": {"computed": str(exact.b(2)), "note": B2_NOTE},
        "bounds_hold_3_to": bounds_k if bounds_ok else False,
        "two_step_decay": decay_ok,
        "weighted_average_identity": weighted_ok,
        "monotone": {"ok": mono.ok, "threshold": mono.threshold, "upto": mono.upto,
                     "first_violation": mono.first_violation},
        "rank_order": rank,
    }
    if dominance_n is not None:
        dom = dominance_check(dominance_n)
        report["dominance"] = {
            "ok": dom.passed,
            "n_max": dom.n_max,
            "checked": dom.checked,
            "violations": dom.violations,
        }
    report["ok"] = bool(
        bounds_ok
        and decay_ok
        and weighted_ok
        and mono.ok
        and rank
        and (dominance_n is None or report["dominance"]["ok"])
        and exact.b(2) == Fraction(1, 72)
    )
    return report
