from fractions import Fraction

import pytest

from minesearch.optimal import (
    MoveReport,
    SizeCapError,
    optimal_moves,
    optimal_value,
    optimal_value_generic,
    path_optimal_splits,
    path_position_values,
    path_value_closed,
    star_value,
)
from minesearch.trees import Tree, make_path, make_spider, make_star


def test_optimal_value_examples():
    assert optimal_value(make_path(3)) == Fraction(2, 3)
    assert optimal_value(make_path(1)) == 0
    assert optimal_value(make_star(5)) == Fraction(4, 5)
    assert optimal_value(make_spider([2, 2])) == Fraction(2, 5)


def test_path_value_closed():
    assert path_value_closed(4) == Fraction(1, 2)
    assert path_value_closed(5) == Fraction(2, 5)
    assert path_value_closed(7) == Fraction(4, 7)
    assert path_value_closed(1) == 0
    with pytest.raises(ValueError):
        path_value_closed(0)


def test_closed_form_agreement_up_to_40():
    for n in range(1, 41):
        assert optimal_value(make_path(n)) == path_value_closed(n), n


def test_base_case_reports():
    expected = {
        1: (Fraction(0), {1}),
        2: (Fraction(1, 2), {1, 2}),
        3: (Fraction(2, 3), {2}),
        4: (Fraction(1, 2), {2, 3}),
    }
    for n, (value, moves) in expected.items():
        rep = optimal_moves(make_path(n))
        assert rep.value == value
        assert rep.best_moves == frozenset(moves)


def test_star_moves():
    rep = optimal_moves(make_star(6))
    assert rep.best_moves == frozenset({1})
    assert rep.value == Fraction(5, 6)
    assert star_value(5) == Fraction(4, 5)
    assert star_value(1) == 0
    assert star_value(100) == Fraction(99, 100)


def test_star_agreement():
    for n in range(1, 13):
        assert optimal_value(make_star(n)) == star_value(n)


def test_structure_dependence_witness():
    # one shape pair with equal n but different values
    assert path_value_closed(5) == Fraction(2, 5) != Fraction(4, 5) == star_value(5)
    assert optimal_value(make_path(5)) != optimal_value(make_star(5))


def test_path_symmetry():
    for n in range(2, 30):
        rep = optimal_moves(make_path(n))
        for m in range(1, n + 1):
            assert rep.per_move_values[m] == rep.per_move_values[n + 1 - m]


def test_moves_report_invariants():
    for t in (make_path(9), make_star(7), make_spider([2, 2, 1])):
        rep = optimal_moves(t)
        assert isinstance(rep, MoveReport)
        assert rep.value == max(rep.per_move_values.values())
        assert rep.best_moves == frozenset(
            v for v, x in rep.per_move_values.items() if x == rep.value
        )


def test_splits_examples():
    s7 = path_optimal_splits(7)
    assert s7.pairs == frozenset({(1, 5)})
    assert s7.guesses == frozenset({2, 6})

    s4 = path_optimal_splits(4)
    assert s4.pairs == frozenset({(1, 2)})
    assert s4.guesses == frozenset({2, 3})

    s6 = path_optimal_splits(6)
    assert s6.pairs == frozenset({(1, 4), (0, 5)})
    assert s6.guesses == frozenset({1, 2, 5, 6})

    s5 = path_optimal_splits(5)
    assert s5.guesses == frozenset({1, 2, 3, 4, 5})  # every move optimal


def test_splits_match_dp_argmax_up_to_40():
    for n in range(2, 41):
        s = path_optimal_splits(n)
        assert s.consistent, n
        assert s.guesses == s.dp_guesses
        vals = path_position_values(n)
        top = max(vals)
        assert s.guesses == {j + 1 for j, v in enumerate(vals) if v == top}


def test_generic_cap():
    big = make_spider([4, 4, 4, 4])  # 17 vertices, not path/star
    with pytest.raises(SizeCapError):
        optimal_value(big)
    with pytest.raises(SizeCapError):
        optimal_value_generic(make_path(13))


def test_generic_matches_routed():
    for t in (make_path(8), make_star(8), make_spider([2, 2, 1])):
        assert optimal_value_generic(t) == optimal_value(t)


def test_scrambled_path_per_move_uses_positions():
    t = Tree(3, ((3, 1), (1, 2)))  # path 2-1-3: middle is label 1
    rep = optimal_moves(t)
    assert rep.best_moves == frozenset({1})
    assert rep.value == Fraction(2, 3)


def test_concurrent_solver_calls_are_consistent():
    import threading

    trees = [make_spider([2, 2, 1]), make_spider([3, 1, 1]), make_path(11)]
    expected = {i: optimal_value(t) for i, t in enumerate(trees)}
    results: dict[tuple[int, int], Fraction] = {}

    def work(worker: int) -> None:
        for i, t in enumerate(trees):
            results[(worker, i)] = optimal_value(t)

    threads = [threading.Thread(target=work, args=(w,)) for w in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    for (worker, i), val in results.items():
        assert val == expected[i]
