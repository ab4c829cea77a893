"""Multi-pile abstraction of the game on spiders.

A rooted spider is abstracted to the multiset of its leg lengths.  A turn
either cuts a leg (guess the c-th vertex from the leg's free end) or cuts
the root:

  leg cut c on leg of length L (n vertices total):
      1/n       guessed the mine, mover loses
      (c-1)/n   mine sits beyond the guess: continue on a path of the
                c-1 severed vertices
      (n-c)/n   mine in the rest: the leg shrinks to L - c
  root cut:
      1/n       mover loses
      L_i/n     continue on a path of L_i vertices, per leg

Once only a path remains the usual positional guesses apply.  The severed
fragment has c-1 vertices (the vertices strictly beyond the guess); this
is what the tree semantics forces even though the move is often described
as leaving "a path of length c", and the coupling check certifies the
reading against the tree-level solvers.  A rooted state with a single leg
of length L is the same position as a path of L+1 vertices and is
normalised to it.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .trees import Tree, make_spider, spider_root_and_legs
from .optimal import optimal_value_generic
from .exploit import ExploitReport, exploit_values_generic

SPIDER_CAP = 30

FRAGMENT_NOTE = (
    "note: a leg cut's severed fragment is a path of c-1 vertices (the "
    "vertices beyond the guess), matching its probability weight (c-1)/n; "
    "describing it as a path of length c double-counts the guessed vertex. "
    "The coupling check certifies this reading."
)


@dataclass(frozen=True)
class SpiderState:
    """Rooted phase: legs multiset (sorted descending).  Path phase: length."""

    phase: str  # "rooted" | "path"
    legs: tuple[int, ...] = ()
    path_len: int = 0

    @staticmethod
    def rooted(legs) -> "SpiderState":
        legs = tuple(sorted(legs, reverse=True))
        if any(l < 1 for l in legs):
            raise ValueError("leg lengths must be positive")
        if not legs:
            return SpiderState(phase="path", path_len=1)
        return SpiderState(phase="rooted", legs=legs)

    @staticmethod
    def path(length: int) -> "SpiderState":
        if length < 0:
            raise ValueError("path length must be >= 0")
        return SpiderState(phase="path", path_len=length)

    def normalized(self) -> "SpiderState":
        if self.phase == "rooted" and len(self.legs) == 1:
            return SpiderState.path(self.legs[0] + 1)
        return self

    @property
    def size(self) -> int:
        if self.phase == "rooted":
            return 1 + sum(self.legs)
        return self.path_len


@dataclass(frozen=True)
class NimMove:
    kind: str  # "leg_cut" | "root_cut" | "path_guess"
    leg_index: int | None = None
    cut: int | None = None
    position: int | None = None


def legal_moves(s: SpiderState) -> list[NimMove]:
    if s.phase == "rooted":
        moves = [
            NimMove(kind="leg_cut", leg_index=i, cut=c)
            for i, l in enumerate(s.legs)
            for c in range(1, l + 1)
        ]
        moves.append(NimMove(kind="root_cut"))
        return moves
    return [NimMove(kind="path_guess", position=j) for j in range(1, s.path_len + 1)]


LOSS = None  # successor marker for "guessed the mine"


def outcome_distribution(
    s: SpiderState, m: NimMove
) -> list[tuple[Fraction, SpiderState | None]]:
    """(probability, successor) pairs; successor None means the mover lost.

    Probabilities sum to exactly 1.
    """
    n = s.size
    out: list[tuple[Fraction, SpiderState | None]] = [(Fraction(1, n), LOSS)]
    if s.phase == "rooted":
        if m.kind == "root_cut":
            for l in s.legs:
                out.append((Fraction(l, n), SpiderState.path(l)))
        elif m.kind == "leg_cut":
            if not (
                m.leg_index is not None
                and 0 <= m.leg_index < len(s.legs)
                and m.cut is not None
                and 1 <= m.cut <= s.legs[m.leg_index]
            ):
                raise ValueError(f"illegal move {m} in state {s}")
            l = s.legs[m.leg_index]
            c = m.cut
            if c - 1 >= 1:
                out.append((Fraction(c - 1, n), SpiderState.path(c - 1)))
            rest = list(s.legs)
            if l - c >= 1:
                rest[m.leg_index] = l - c
            else:
                rest.pop(m.leg_index)
            succ = SpiderState.rooted(rest) if rest else SpiderState.path(1)
            out.append((Fraction(n - c, n), succ.normalized()))
        else:
            raise ValueError(f"illegal move {m} in state {s}")
    else:
        if m.kind != "path_guess" or not (1 <= (m.position or 0) <= s.path_len):
            raise ValueError(f"illegal move {m} in state {s}")
        j = m.position
        if j - 1 >= 1:
            out.append((Fraction(j - 1, n), SpiderState.path(j - 1)))
        if s.path_len - j >= 1:
            out.append((Fraction(s.path_len - j, n), SpiderState.path(s.path_len - j)))
    assert sum(p for p, _ in out) == 1
    return out


class NimValues(NamedTuple):
    optimal: Fraction
    P: Fraction
    Q: Fraction


_lock = threading.Lock()
_memo: dict[SpiderState, NimValues] = {}


def nim_values(s: SpiderState) -> NimValues:
    """(optimal-vs-optimal, exploiter-first, exploiter-second) values."""
    if s.size > SPIDER_CAP:
        raise ValueError(f"spider solver capped at {SPIDER_CAP} total vertices")
    s = s.normalized()
    with _lock:
        cached = _memo.get(s)
    if cached is not None:
        return cached
    if s.phase == "path" and s.path_len <= 1:
        val = NimValues(Fraction(0), Fraction(0), Fraction(1))
        # a lone vertex must be guessed; an empty path cannot be reached
    else:
        moves = legal_moves(s)
        outcomes = [outcome_distribution(s, m) for m in moves]
        opt = Fraction(0)
        best_p = Fraction(0)
        q_total = Fraction(0)
        for dist in outcomes:
            mover_opt = Fraction(0)
            mover_p = Fraction(0)
            rand_q = Fraction(0)
            for prob, succ in dist:
                if succ is LOSS:
                    rand_q += prob  # random mover hit the mine: exploiter wins
                    continue
                sub = nim_values(succ)
                mover_opt += prob * (1 - sub.optimal)
                mover_p += prob * sub.Q
                rand_q += prob * sub.P
            opt = max(opt, mover_opt)
            best_p = max(best_p, mover_p)
            q_total += rand_q
        val = NimValues(opt, best_p, q_total / len(moves))
    with _lock:
        _memo[s] = val
    return val


def spider_exploit_report(t: Tree) -> ExploitReport:
    """Exploit report for a spider tree via the leg-multiset engine,
    mapped back to the tree's vertex labels."""
    rl = spider_root_and_legs(t)
    if rl is None:
        raise ValueError("not a spider")
    root, legs = rl
    state = SpiderState.rooted(len(leg) for leg in legs)
    vals = nim_values(state)
    per_move: dict[int, Fraction] = {}
    # sorted-descending state legs vs tree legs: pick a state leg of equal length
    sorted_lengths = list(state.legs)
    for leg in legs:
        l = len(leg)
        idx = sorted_lengths.index(l)
        for depth, v in enumerate(leg, start=1):
            move = NimMove(kind="leg_cut", leg_index=idx, cut=l - depth + 1)
            per_move[v] = _move_value(state, move)
    per_move[root] = _move_value(state, NimMove(kind="root_cut"))
    best = frozenset(v for v, x in per_move.items() if x == vals.P)
    return ExploitReport(P=vals.P, Q=vals.Q, best_first_moves=best, per_move=per_move)


def _move_value(s: SpiderState, m: NimMove) -> Fraction:
    val = Fraction(0)
    for prob, succ in outcome_distribution(s, m):
        if succ is not LOSS:
            val += prob * nim_values(succ).Q
    return val


def coupling_check(legs) -> bool:
    """Certify that the leg-multiset engine agrees with the tree solvers."""
    legs = list(legs)
    t = make_spider(legs)
    nim = nim_values(SpiderState.rooted(legs))
    tree_rep = exploit_values_generic(t)
    return (
        nim.optimal == optimal_value_generic(t)
        and nim.P == tree_rep.P
        and nim.Q == tree_rep.Q
    )
