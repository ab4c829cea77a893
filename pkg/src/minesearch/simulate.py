"""Two independent oracles for the solvers.

`exhaustive_value` sums exactly over the uniform mine placement and every
random-move branch; `monte_carlo` plays seeded games.  Both share the same
strategy definitions:

  optimal             argmax of the optimal-vs-optimal solver, smallest
                      live label on ties (deterministic for replays; the
                      tie choice never changes the optimal-vs-optimal value)
  random              uniform over the live vertices
  fixed_second_vertex paths only: the second position from the low-label
                      end of the current interval (the lone vertex when
                      only one remains)
  exploit_dp          argmax of the exploit solver's first-move values,
                      smallest label on ties

Monte Carlo trial i draws from SplitMix64 stream (seed, i): the mine
first, then one draw per random move, so every trial replays in isolation
and results are independent of the total trial count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

import numpy as np

from . import rng
from .exploit import exploit_values
from .optimal import optimal_moves
from .trees import Tree, induced_subtree, is_path, path_order

EXHAUSTIVE_CAP = 12
MC_GENERIC_CAP = 14
MC_PATH_CAP = 4000

STRATEGY_KINDS = ("optimal", "random", "fixed_second_vertex", "exploit_dp")


@dataclass(frozen=True)
class StrategySpec:
    kind: str

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy '{self.kind}'")


@dataclass(frozen=True)
class SimResult:
    trials: int
    wins: int
    mean: float
    stderr: float
    seed: int


def _validate(t: Tree, first: StrategySpec, second: StrategySpec) -> None:
    for s in (first, second):
        if s.kind == "fixed_second_vertex" and not is_path(t):
            raise ValueError("fixed_second_vertex is only defined on paths")


# ---------------------------------------------------------------------------
# deterministic strategy choices on live subsets


def choose_move(t: Tree, live: frozenset[int], kind: str,
                stream: rng.SplitMix64 | None = None) -> int:
    """The strategy's guess on the induced live component of `t`."""
    verts = sorted(live)
    if kind == "random":
        if stream is None:
            raise ValueError("random strategy needs a stream")
        return verts[stream.randrange(len(verts))]
    if len(verts) == 1:
        return verts[0]
    if kind == "fixed_second_vertex":
        sub, label_map = induced_subtree(t, live)
        # path_order starts at the end with the smaller label
        return label_map[path_order(sub)[1]]
    sub, label_map = induced_subtree(t, live)
    if kind == "optimal":
        best = optimal_moves(sub).best_moves
    elif kind == "exploit_dp":
        best = exploit_values(sub).best_first_moves
    else:
        raise ValueError(f"unknown strategy '{kind}'")
    return min(label_map[x] for x in best)


# ---------------------------------------------------------------------------
# exact enumeration


def exhaustive_value(t: Tree, first: StrategySpec, second: StrategySpec) -> Fraction:
    """Exact probability that the FIRST player wins, summing over the
    uniform mine and all random-move branches."""
    if t.n > EXHAUSTIVE_CAP:
        raise ValueError(f"exhaustive enumeration capped at n={EXHAUSTIVE_CAP}")
    _validate(t, first, second)
    adj_mask = _adjacency_masks(t)
    kinds = (first.kind, second.kind)
    memo: dict[tuple[int, int], Fraction] = {}

    def mover_wins(mask: int, idx: int) -> Fraction:
        key = (mask, idx)
        if key in memo:
            return memo[key]
        size = mask.bit_count()
        verts = _mask_vertices(mask)
        if kinds[idx] == "random":
            branches = [(Fraction(1, len(verts)), v) for v in verts]
        else:
            branches = [(Fraction(1), choose_move(t, frozenset(verts), kinds[idx]))]
        total = Fraction(0)
        for prob, v in branches:
            comps = _components_after(mask, v, adj_mask)
            assert sum(c.bit_count() for c in comps) == size - 1
            val = Fraction(0)
            for comp in comps:
                val += Fraction(comp.bit_count(), size) * (1 - mover_wins(comp, 1 - idx))
            total += prob * val
        memo[key] = total
        return total

    return mover_wins((1 << t.n) - 1, 0)


def _adjacency_masks(t: Tree) -> list[int]:
    masks = [0] * (t.n + 1)
    for a, b in t.edges:
        masks[a] |= 1 << (b - 1)
        masks[b] |= 1 << (a - 1)
    return masks


def _mask_vertices(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def _components_after(mask: int, v: int, adj_mask: list[int]) -> list[int]:
    rest = mask & ~(1 << (v - 1))
    comps = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            f = frontier
            while f:
                bit = f & -f
                f ^= bit
                nxt |= adj_mask[bit.bit_length()] & rest & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rest &= ~comp
    return comps


# ---------------------------------------------------------------------------
# Monte Carlo


def monte_carlo(
    t: Tree, first: StrategySpec, second: StrategySpec, trials: int, seed: int
) -> SimResult:
    """Seeded, reproducible simulation; returns the FIRST player's win rate."""
    if trials < 1:
        raise ValueError("trials >= 1")
    _validate(t, first, second)
    if is_path(t):
        if t.n > MC_PATH_CAP:
            raise ValueError(f"path simulation capped at n={MC_PATH_CAP}")
        wins = _mc_path(t, first.kind, second.kind, trials, seed)
    else:
        if t.n > MC_GENERIC_CAP:
            raise ValueError(f"tree simulation capped at n={MC_GENERIC_CAP}")
        wins = _mc_tree(t, first.kind, second.kind, trials, seed)
    mean = wins / trials
    return SimResult(
        trials=trials,
        wins=wins,
        mean=mean,
        stderr=sqrt(mean * (1 - mean) / trials),
        seed=seed,
    )


def _mc_path(t: Tree, k0: str, k1: str, trials: int, seed: int) -> int:
    """Interval engine: live state is a position range [lo, hi]."""
    n = t.n
    order = path_order(t)  # position -> original label
    label_pos = {lab: i + 1 for i, lab in enumerate(order)}
    det: dict[str, np.ndarray] = {}
    for kind in {k0, k1} - {"random"}:
        table = np.zeros((n + 2, n + 2), dtype=np.int64)
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                live = frozenset(order[lo - 1 : hi])
                table[lo, hi] = label_pos[choose_move(t, live, kind)]
        det[kind] = table

    states = rng.np_stream_states(seed, trials)
    mine = (rng.np_next_u64(states) % np.uint64(n)).astype(np.int64) + 1
    lo = np.ones(trials, dtype=np.int64)
    hi = np.full(trials, n, dtype=np.int64)
    alive = np.ones(trials, dtype=bool)
    first_wins = np.zeros(trials, dtype=bool)
    kinds = (k0, k1)
    mover = 0
    while alive.any():
        kind = kinds[mover]
        g = np.zeros(trials, dtype=np.int64)
        if kind == "random":
            size = (hi - lo + 1).astype(np.uint64)
            draws = rng.np_next_u64(states, alive)
            g[alive] = lo[alive] + (draws % size[alive]).astype(np.int64)
        else:
            g[alive] = det[kind][lo[alive], hi[alive]]
        hit = alive & (g == mine)
        first_wins |= hit & (mover == 1)
        alive &= ~hit
        left = alive & (mine < g)
        right = alive & (mine > g)
        hi = np.where(left, g - 1, hi)
        lo = np.where(right, g + 1, lo)
        mover ^= 1
    return int(first_wins.sum())


def _mc_tree(t: Tree, k0: str, k1: str, trials: int, seed: int) -> int:
    """Bitmask engine: precomputed strategy and transition tables."""
    n = t.n
    adj_mask = _adjacency_masks(t)
    full = (1 << n) - 1
    reach = _reachable_masks(full, adj_mask)

    verts = np.zeros((full + 1, n), dtype=np.int64)
    pops = np.zeros(full + 1, dtype=np.int64)
    trans = np.full((full + 1, n + 1, n + 1), -1, dtype=np.int64)
    det: dict[str, np.ndarray] = {}
    for kind in {k0, k1} - {"random"}:
        det[kind] = np.zeros(full + 1, dtype=np.int64)
    for mask in reach:
        vs = _mask_vertices(mask)
        pops[mask] = len(vs)
        verts[mask, : len(vs)] = vs
        for kind in det:
            det[kind][mask] = choose_move(t, frozenset(vs), kind)
        for g in vs:
            for comp in _components_after(mask, g, adj_mask):
                for m in _mask_vertices(comp):
                    trans[mask, g, m] = comp

    states = rng.np_stream_states(seed, trials)
    mine = (rng.np_next_u64(states) % np.uint64(n)).astype(np.int64) + 1
    cur = np.full(trials, full, dtype=np.int64)
    alive = np.ones(trials, dtype=bool)
    first_wins = np.zeros(trials, dtype=bool)
    kinds = (k0, k1)
    mover = 0
    while alive.any():
        kind = kinds[mover]
        g = np.zeros(trials, dtype=np.int64)
        if kind == "random":
            draws = rng.np_next_u64(states, alive)
            idx = (draws % pops[cur[alive]].astype(np.uint64)).astype(np.int64)
            g[alive] = verts[cur[alive], idx]
        else:
            g[alive] = det[kind][cur[alive]]
        hit = alive & (g == mine)
        first_wins |= hit & (mover == 1)
        alive &= ~hit
        cur = np.where(alive, trans[cur, g, mine], cur)
        mover ^= 1
    return int(first_wins.sum())


def _reachable_masks(full: int, adj_mask: list[int]) -> list[int]:
    seen = {full}
    stack = [full]
    while stack:
        mask = stack.pop()
        for v in _mask_vertices(mask):
            for comp in _components_after(mask, v, adj_mask):
                if comp not in seen:
                    seen.add(comp)
                    stack.append(comp)
    return sorted(seen)
