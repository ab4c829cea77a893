from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minesearch.exploit import (
    B2_NOTE,
    F_values,
    b_bound_closed,
    best_first_guesses,
    dominance_check,
    exploit_values,
    exploit_values_generic,
    limit_2a,
    monotonicity_check,
    path_tables,
    rank_order_check,
    star_PQ,
    verification_report,
)
from minesearch.trees import Tree, make_path, make_spider, make_star


@pytest.fixture(scope="module")
def exact24():
    return path_tables(24, "exact")


@pytest.fixture(scope="module")
def exact220():
    return path_tables(220, "exact")


def test_table_base_values(exact24):
    t = exact24
    assert t.s(1) == 0 and t.s(2) == 1 and t.s(3) == 3
    assert t.p(1) == 0 and t.p(2) == Fraction(1, 2) and t.p(3) == Fraction(2, 3)
    assert t.q(1) == 1 and t.q(2) == Fraction(1, 2) and t.q(3) == Fraction(5, 9)
    assert t.p(5) == Fraction(8, 15)
    assert t.s(5) == Fraction(23, 3)
    assert float(t.q(10)) == pytest.approx(0.5982539682539684, rel=1e-12)
    assert float(t.s(24)) == pytest.approx(174.58339143224384, rel=1e-12)


def test_table_a_values(exact24):
    t = exact24
    assert [t.a(k) for k in range(5)] == [
        Fraction(1, 3),
        Fraction(2, 7),
        Fraction(7, 24),
        Fraction(11, 36),
        Fraction(3, 10),
    ]


def test_s_difference_identity(exact24):
    for n in range(2, 25):
        assert exact24.s(n) - exact24.s(n - 1) == n * exact24.p(n)


def test_table_preconditions():
    with pytest.raises(ValueError):
        path_tables(2, "exact")
    with pytest.raises(ValueError):
        path_tables(3000, "exact")
    with pytest.raises(ValueError):
        path_tables(10, "dozenal")


def test_float_exact_agreement():
    ex = path_tables(500, "exact")
    fl = path_tables(500, "float")
    for n in range(1, 501):
        assert float(fl.p(n)) == pytest.approx(float(ex.p(n)), rel=1e-12)
        assert float(fl.q(n)) == pytest.approx(float(ex.q(n)), rel=1e-12)
        assert float(fl.s(n)) == pytest.approx(float(ex.s(n)), rel=1e-12, abs=1e-12)


def test_quadratic_round_trip(exact220):
    t = exact220
    for k in range(0, 221):
        assert t.a(k) * (k * k + 7 * k + 6) - 2 * (k + 1) == t.s(k)


def test_weighted_average_identity(exact220):
    t = exact220
    for k in range(3, 201):
        lhs = t.a(k)
        rhs = (t.a(k - 1) * k * (k + 5) + 2 * t.a(k - 3) * (k + 3)) / ((k + 6) * (k + 1))
        assert lhs == rhs


def test_window_containment(exact220):
    t = exact220
    for k in range(0, 60):
        lo = min(t.a(k), t.a(k + 1), t.a(k + 2))
        hi = max(t.a(k), t.a(k + 1), t.a(k + 2))
        for i in range(k + 3, min(k + 48, 221)):
            assert lo <= t.a(i) <= hi


def test_b_bounds(exact220):
    t = exact220
    assert t.b(2) == Fraction(1, 72)  # not 1/120
    assert b_bound_closed(0) == Fraction(1, 21)
    assert b_bound_closed(1) == Fraction(5, 252)
    assert b_bound_closed(4) == Fraction(4, 126) == Fraction(2, 63)
    assert t.b(1) == b_bound_closed(1)  # bound met with equality
    for k in range(3, 201):
        assert t.b(k) <= b_bound_closed(k)
        assert t.b(k - 1) <= Fraction(4, k + 1) * t.b(k - 3)


def test_monotonicity(exact24):
    rep = monotonicity_check(exact24)
    assert rep.ok and rep.first_violation is None
    # the dip just before the threshold is expected and not a violation
    assert exact24.q(8) > exact24.q(9)
    assert exact24.p(7) > exact24.p(8)
    big = path_tables(1000, "float")
    assert monotonicity_check(big).ok
    with pytest.raises(ValueError):
        monotonicity_check(path_tables(20, "exact"))


def test_rank_order(exact24):
    assert rank_order_check(exact24)
    q = exact24.q
    assert q(23) > q(7) > q(22)
    assert float(q(7)) == pytest.approx(0.5986394557823129, rel=1e-12)


def test_rank_order_detects_violation(exact24):
    t = exact24
    broken = path_tables(24, "exact")
    broken._q = list(broken._q)
    broken._q[9] = Fraction(9, 10)  # out-of-place spike
    assert not rank_order_check(broken)


def test_F_values(exact24):
    fv = F_values(3, exact24)  # game size k+1 = 4
    assert fv[2] == 2 and fv[3] == 2
    top = max(fv.values())
    assert {x for x, v in fv.items() if v == top} == {2, 3}

    fv = F_values(9, exact24)  # game size 10
    top = max(fv.values())
    assert {x for x, v in fv.items() if v == top} == {2, 9}

    for k in range(2, 24):
        fv = F_values(k, exact24)
        assert all(fv[x] == fv[k + 2 - x] for x in fv)
        top = max(fv.values())
        assert {x for x, v in fv.items() if v == top} == {2, k}


def test_best_first_guesses():
    assert best_first_guesses(2) == {1, 2}
    for n in range(3, 31):
        assert best_first_guesses(n) == {2, n - 1}


def test_best_guesses_agree_with_fixed_strategy_tables(exact24):
    # optimal-X mutual recursion values equal the fixed-strategy tables
    for n in range(1, 25):
        rep = exploit_values(make_path(n))
        assert rep.P == exact24.p(n), n
        assert rep.Q == exact24.q(n), n


def test_exploit_values_examples():
    rep = exploit_values(make_path(3))
    assert (rep.P, rep.Q) == (Fraction(2, 3), Fraction(5, 9))
    rep = exploit_values(Tree(1, ()))
    assert (rep.P, rep.Q) == (0, 1)
    rep = exploit_values(make_star(5))
    assert (rep.P, rep.Q) == (Fraction(4, 5), Fraction(17, 25))


def test_exploit_per_move_symmetry():
    for n in range(2, 26):
        rep = exploit_values(make_path(n))
        for m in range(1, n + 1):
            assert rep.per_move[m] == rep.per_move[n + 1 - m]


def test_exploit_report_invariants():
    for t in (make_path(9), make_star(8), make_spider([2, 2, 1])):
        rep = exploit_values(t)
        assert rep.P == max(rep.per_move.values())
        assert rep.best_first_moves == frozenset(
            v for v, x in rep.per_move.items() if x == rep.P
        )


def test_star_PQ():
    assert star_PQ(10) == (Fraction(9, 10), Fraction(41, 50))
    assert star_PQ(2) == (Fraction(1, 2), Fraction(1, 2))
    p, q = star_PQ(10**6)
    assert 1 - float(p) < 1e-5 and 1 - float(q) < 1e-5


def test_star_agreement_with_dp():
    for n in range(1, 13):
        rep = exploit_values(make_star(n))
        assert (rep.P, rep.Q) == star_PQ(n)


def test_generic_agrees_with_routes():
    for t in (make_path(8), make_star(7), make_spider([2, 2, 1]), make_spider([3, 2])):
        gen = exploit_values_generic(t)
        routed = exploit_values(t)
        assert (gen.P, gen.Q) == (routed.P, routed.Q)
        assert gen.per_move == routed.per_move


def test_dominance():
    rep = dominance_check(7)
    assert rep.passed
    assert rep.checked == 1 + 1 + 1 + 2 + 3 + 6 + 11
    # P_5 under Q against the star bound
    assert exploit_values(make_path(5)).Q == Fraction(3, 5) <= Fraction(17, 25)
    # equality witness: the star itself
    star_rep = exploit_values_generic(make_star(6))
    assert (star_rep.P, star_rep.Q) == star_PQ(6)


def test_limit_values():
    est, bound = limit_2a(1000)
    assert bound >= 0
    assert abs(est - 0.598889043819424) < 1e-12
    with pytest.raises(ValueError):
        limit_2a(50)


def test_limit_at_n100():
    # convergence is factorial: at N=100 the float estimate already sits on
    # the limit to machine precision, so the certificate window collapses
    est, bound = limit_2a(100)
    assert abs(est - 0.598889043819424) < 1e-12
    assert 0 <= bound < 1e-12


def test_verification_report():
    rep = verification_report(bounds_k=60, monotone_n=100)
    assert rep["ok"]
    assert rep["b2"]["computed"] == "1/72"
    assert "1/120" in rep["b2"]["note"] and "1/72" in rep["b2"]["note"]
    assert rep["b2"]["note"] == B2_NOTE


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=60))
def test_p_equals_exploit_P_on_paths(n):
    tab = path_tables(max(n, 3), "exact")
    assert exploit_values(make_path(n)).P == tab.p(n)
