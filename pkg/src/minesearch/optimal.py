"""Exact win probabilities and move sets for two optimal players.

The first mover's value on tree T is

    W(T) = max_v sum_{S in components(T - v)} (|S|/n) * (1 - W(S)),

with W(single vertex) = 0: a guess loses outright with probability 1/n and
otherwise hands the opponent the component that holds the mine.  Paths are
solved on interval sizes (every component of a path is a path), stars on
their size, and anything else by memoised recursion over canonical shapes.
All arithmetic is exact.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .trees import Tree, canonical_key, is_path, is_star, path_order, split_at

GENERIC_CAP = 12


class SizeCapError(ValueError):
    """Tree too large for the requested exact computation."""


@dataclass(frozen=True)
class MoveReport:
    value: Fraction
    best_moves: frozenset[int]
    per_move_values: dict[int, Fraction]


def path_value_closed(n: int) -> Fraction:
    """First mover's optimal value on a path of n vertices, closed form."""
    if n < 1:
        raise ValueError("n >= 1")
    if n % 2 == 0:
        return Fraction(1, 2)
    k = n // 4
    if n % 4 == 1:
        return Fraction(2 * k, n)
    return Fraction(2 * k + 2, n)


def star_value(n: int) -> Fraction:
    """First mover's optimal value on a star: guess the hub, (n-1)/n."""
    if n < 1:
        raise ValueError("n >= 1")
    return Fraction(n - 1, n)


# ---------------------------------------------------------------------------
# path solver on interval sizes

_path_lock = threading.Lock()
_path_w: list[Fraction] = [Fraction(0)]  # _path_w[m] = W(path of m vertices); [0] unused


def _extend_path_w(n: int) -> None:
    with _path_lock:
        for m in range(len(_path_w), n + 1):
            best = Fraction(0)
            for j in range(1, m + 1):
                v = Fraction(0)
                if j - 1 >= 1:
                    v += Fraction(j - 1, m) * (1 - _path_w[j - 1])
                if m - j >= 1:
                    v += Fraction(m - j, m) * (1 - _path_w[m - j])
                if v > best:
                    best = v
            _path_w.append(best)


def path_position_values(n: int) -> list[Fraction]:
    """Value of guessing position j (1-based along the path), for j = 1..n."""
    _extend_path_w(n)
    out = []
    for j in range(1, n + 1):
        v = Fraction(0)
        if j - 1 >= 1:
            v += Fraction(j - 1, n) * (1 - _path_w[j - 1])
        if n - j >= 1:
            v += Fraction(n - j, n) * (1 - _path_w[n - j])
        out.append(v)
    return out


def _path_value(n: int) -> Fraction:
    _extend_path_w(n)
    return _path_w[n]


# ---------------------------------------------------------------------------
# star solver on sizes

_star_lock = threading.Lock()
_star_w: dict[int, Fraction] = {1: Fraction(0)}


def _star_value_dp(n: int) -> Fraction:
    with _star_lock:
        for m in range(2, n + 1):
            if m in _star_w:
                continue
            hub = Fraction(m - 1, m)  # leaves become singletons, each W = 0
            leaf = Fraction(m - 1, m) * (1 - _star_w[m - 1])
            _star_w[m] = max(hub, leaf)
    return _star_w[n]


# ---------------------------------------------------------------------------
# generic trees

_generic_lock = threading.Lock()
_generic_memo: dict[str, Fraction] = {}


def _generic_value(t: Tree) -> Fraction:
    key = canonical_key(t)
    with _generic_lock:
        cached = _generic_memo.get(key)
    if cached is not None:
        return cached
    if t.n == 1:
        val = Fraction(0)
    else:
        val = max(_generic_move_value(t, v) for v in t.vertices())
    with _generic_lock:
        _generic_memo[key] = val
    return val


def _generic_move_value(t: Tree, v: int) -> Fraction:
    val = Fraction(0)
    for part in split_at(t, v).parts:
        val += Fraction(part.tree.n, t.n) * (1 - _generic_value(part.tree))
    return val


def optimal_value_generic(t: Tree) -> Fraction:
    """Shape-memoised recursion with no special-case routing (size-capped)."""
    if t.n > GENERIC_CAP:
        raise SizeCapError(f"generic optimal solver capped at n={GENERIC_CAP}")
    return _generic_value(t)


def optimal_value(t: Tree) -> Fraction:
    """First mover's optimal win probability on `t`."""
    if is_path(t):
        return _path_value(t.n)
    if is_star(t):
        return _star_value_dp(t.n)
    return optimal_value_generic(t)


def optimal_moves(t: Tree) -> MoveReport:
    """Per-move values and the argmax set for the first mover."""
    if is_path(t):
        vals = path_position_values(t.n)
        per_move = {lab: vals[i] for i, lab in enumerate(path_order(t))}
    elif is_star(t):
        if t.n == 1:
            per_move = {1: Fraction(0)}
        else:
            hub = max(t.degrees().items(), key=lambda kv: kv[1])[0]
            leaf_val = Fraction(t.n - 1, t.n) * (1 - _star_value_dp(t.n - 1))
            per_move = {
                v: Fraction(t.n - 1, t.n) if v == hub else leaf_val
                for v in t.vertices()
            }
    else:
        if t.n > GENERIC_CAP:
            raise SizeCapError(f"generic optimal solver capped at n={GENERIC_CAP}")
        per_move = {v: _generic_move_value(t, v) for v in t.vertices()}
    value = max(per_move.values())
    best = frozenset(v for v, x in per_move.items() if x == value)
    return MoveReport(value=value, best_moves=best, per_move_values=per_move)


# ---------------------------------------------------------------------------
# optimal split sizes for paths


@dataclass(frozen=True)
class PathSplits:
    """Optimal first guesses on a path, as split-size pairs and positions.

    `pairs` are unordered size pairs (a, b) with a + b = n - 1; `guesses`
    are the positions they induce; `dp_guesses` is the argmax recomputed
    from the interval solver.  `consistent` reports whether the two agree
    (degenerate size-0 ranges are kept only when the solver confirms them,
    and a mismatch is surfaced here rather than silently dropped).
    """

    n: int
    pairs: frozenset[tuple[int, int]]
    guesses: frozenset[int]
    dp_guesses: frozenset[int]
    consistent: bool


def _split_pairs(n: int) -> set[tuple[int, int]]:
    k, r = divmod(n, 4)
    pairs: set[tuple[int, int]] = set()
    if r == 0:
        for k1 in range(0, k):
            k2 = (k - 1) - k1
            a, b = 4 * k1 + 1, 4 * k2 + 2
            pairs.add((min(a, b), max(a, b)))
    elif r == 1:
        for a in range(0, (n - 1) // 2 + 1):
            pairs.add((a, n - 1 - a))
    elif r == 2:
        for k1 in range(0, k + 1):
            k2 = k - k1
            a, b = 4 * k1 + 1, 4 * k2
            pairs.add((min(a, b), max(a, b)))
    else:
        for k1 in range(0, k + 1):
            k2 = k - k1
            a, b = 4 * k1 + 1, 4 * k2 + 1
            pairs.add((min(a, b), max(a, b)))
    return pairs


def path_optimal_splits(n: int) -> PathSplits:
    """Optimal split-size pairs for a path of n >= 2 vertices."""
    if n < 2:
        raise ValueError("n >= 2")
    pairs = _split_pairs(n)
    guesses = set()
    for a, b in pairs:
        guesses.add(a + 1)
        guesses.add(b + 1)
    vals = path_position_values(n)
    top = max(vals)
    dp_guesses = frozenset(j + 1 for j, v in enumerate(vals) if v == top)
    consistent = frozenset(guesses) == dp_guesses
    if not consistent:
        # keep only solver-confirmed guesses; flag the discrepancy
        confirmed = frozenset(g for g in guesses if g in dp_guesses)
        pairs = {p for p in pairs if (p[0] + 1 in confirmed or p[1] + 1 in confirmed)}
        guesses = confirmed
    return PathSplits(
        n=n,
        pairs=frozenset(pairs),
        guesses=frozenset(guesses),
        dp_guesses=dp_guesses,
        consistent=consistent,
    )
