"""Game boards: labeled trees, vertex removal, canonical forms, enumeration.

Vertices are labeled 1..n.  Removing a guessed vertex splits the tree into
connected components; the game continues on the component holding the mine,
so component extraction keeps a map back to the original labels.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, NamedTuple


class TreeSpecError(ValueError):
    """Malformed textual tree spec; the message names the offending token."""


@dataclass(frozen=True)
class Tree:
    """Labeled unrooted tree on vertices 1..n with exactly n-1 edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        norm = tuple(sorted((min(a, b), max(a, b)) for a, b in edges))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", norm)
        self._validate()

    def _validate(self) -> None:
        if self.n < 1:
            raise ValueError("tree needs at least one vertex")
        if len(self.edges) != self.n - 1:
            raise ValueError(f"expected {self.n - 1} edges, got {len(self.edges)}")
        seen = set()
        for a, b in self.edges:
            if not (1 <= a <= self.n and 1 <= b <= self.n) or a == b:
                raise ValueError(f"bad edge ({a}, {b}) for n={self.n}")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
        # n-1 distinct edges + connectivity => tree
        if self.n > 1 and len(self._component_from(1)) != self.n:
            raise ValueError("edge list is not connected")

    def _component_from(self, start: int) -> set[int]:
        adj = self.adjacency()
        comp, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        return comp

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degrees(self) -> dict[int, int]:
        return {v: len(ns) for v, ns in self.adjacency().items()}

    def vertices(self) -> range:
        return range(1, self.n + 1)


class Part(NamedTuple):
    tree: Tree
    label_map: dict[int, int]  # new label -> original label


@dataclass(frozen=True)
class ComponentSplit:
    removed: int
    parts: tuple[Part, ...]


def make_path(n: int) -> Tree:
    """Path graph on vertices 1..n with edges (i, i+1)."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Tree(n, tuple((i, i + 1) for i in range(1, n)))


def make_star(n: int) -> Tree:
    """Star graph: vertex 1 is the hub, vertices 2..n are leaves."""
    if n < 1:
        raise ValueError("star needs n >= 1")
    return Tree(n, tuple((1, i) for i in range(2, n + 1)))


def make_spider(legs: list[int] | tuple[int, ...]) -> Tree:
    """Spider: root vertex 1 with one path of `leg` vertices per entry.

    Leg vertices are labeled consecutively outward from the root, one leg
    after another, so leg i occupies a contiguous label block.
    """
    legs = tuple(legs)
    if not legs:
        raise ValueError("spider needs at least one leg")
    if any(l < 1 for l in legs):
        raise ValueError("spider legs must be positive")
    edges = []
    nxt = 2
    for l in legs:
        prev = 1
        for _ in range(l):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(1 + sum(legs), tuple(edges))


def split_at(t: Tree, v: int) -> ComponentSplit:
    """Remove vertex `v`; parts are relabeled 1..k, ordered by smallest
    original label, each with a map from new labels back to originals."""
    if not 1 <= v <= t.n:
        raise ValueError(f"vertex {v} not in 1..{t.n}")
    adj = t.adjacency()
    remaining = set(t.vertices()) - {v}
    comps: list[list[int]] = []
    seen: set[int] = set()
    for s in sorted(remaining):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w != v and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(sorted(comp))
    parts = []
    for comp in comps:
        new_of = {orig: i + 1 for i, orig in enumerate(comp)}
        edges = tuple(
            (new_of[a], new_of[b]) for a, b in t.edges if a in new_of and b in new_of
        )
        label_map = {i + 1: orig for i, orig in enumerate(comp)}
        parts.append(Part(Tree(len(comp), edges), label_map))
    return ComponentSplit(removed=v, parts=tuple(parts))


def induced_subtree(t: Tree, live: Iterable[int]) -> Part:
    """Connected induced subtree on `live`, relabeled 1..k ascending."""
    comp = sorted(live)
    live_set = set(comp)
    new_of = {orig: i + 1 for i, orig in enumerate(comp)}
    edges = tuple(
        (new_of[a], new_of[b]) for a, b in t.edges if a in live_set and b in live_set
    )
    return Part(Tree(len(comp), edges), {i + 1: orig for i, orig in enumerate(comp)})


# ---------------------------------------------------------------------------
# canonical form


def _centers(adj: list[list[int]], n: int) -> list[int]:
    if n == 1:
        return [0]
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        nxt = []
        for v in layer:
            remaining -= 1
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def _encode_rooted(adj: list[list[int]], n: int, root: int) -> str:
    # iterative bottom-up labeling; children sorted by their encodings
    parent = [-1] * n
    order = [root]
    parent[root] = root
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in adj[u]:
            if parent[w] == -1:
                parent[w] = u
                order.append(w)
    lab: list[str] = [""] * n
    for u in reversed(order):
        kids = sorted(lab[w] for w in adj[u] if w != u and parent[w] == u)
        lab[u] = "(" + "".join(kids) + ")"
    return lab[root]


def _canonical_key_adj(adj: list[list[int]], n: int) -> str:
    return min(_encode_rooted(adj, n, c) for c in _centers(adj, n))


def canonical_key(t: Tree) -> str:
    """Shape encoding: equal for two trees iff they are isomorphic.

    Rooted at the tree center (both rootings when the center is an edge,
    keeping the lexicographically smaller string).
    """
    adj = [[] for _ in range(t.n)]
    for a, b in t.edges:
        adj[a - 1].append(b - 1)
        adj[b - 1].append(a - 1)
    return _canonical_key_adj(adj, t.n)


# ---------------------------------------------------------------------------
# enumeration

ALL_TREES_MAX_N = 10


def _prufer_decode(seq: tuple[int, ...], n: int) -> list[list[int]]:
    deg = [1] * n
    for x in seq:
        deg[x] += 1
    adj: list[list[int]] = [[] for _ in range(n)]
    heap = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(heap)
    for x in seq:
        leaf = heapq.heappop(heap)
        adj[leaf].append(x)
        adj[x].append(leaf)
        deg[x] -= 1
        if deg[x] == 1:
            heapq.heappush(heap, x)
    u = heapq.heappop(heap)
    v = heapq.heappop(heap)
    adj[u].append(v)
    adj[v].append(u)
    return adj


@lru_cache(maxsize=None)
def _all_trees_cached(n: int) -> tuple[Tree, ...]:
    if n == 1:
        return (Tree(1, ()),)
    if n == 2:
        return (Tree(2, ((1, 2),)),)
    reps: dict[str, Tree] = {}
    for seq in product(range(n), repeat=n - 2):
        adj = _prufer_decode(seq, n)
        key = _canonical_key_adj(adj, n)
        if key not in reps:
            edges = tuple(
                (u + 1, w + 1) for u in range(n) for w in adj[u] if u < w
            )
            reps[key] = Tree(n, edges)
    return tuple(reps.values())


def all_trees(n: int) -> list[Tree]:
    """One representative per isomorphism class of trees on n vertices.

    Enumerates labeled trees by Prüfer sequence and dedupes by canonical
    key; n is capped (the count and the n**(n-2) scan both explode).
    """
    if not 1 <= n <= ALL_TREES_MAX_N:
        raise ValueError(f"all_trees supports 1 <= n <= {ALL_TREES_MAX_N}")
    return list(_all_trees_cached(n))


# ---------------------------------------------------------------------------
# shape classification and textual specs


def is_path(t: Tree) -> bool:
    return all(d <= 2 for d in t.degrees().values())


def is_star(t: Tree) -> bool:
    if t.n <= 3:
        return True
    return max(t.degrees().values()) == t.n - 1


def path_order(t: Tree) -> list[int]:
    """Vertex labels end to end; the end with the smaller label comes first."""
    if not is_path(t):
        raise ValueError("not a path")
    if t.n == 1:
        return [1]
    adj = t.adjacency()
    ends = [v for v, ns in adj.items() if len(ns) == 1]
    start = min(ends)
    order = [start]
    prev = None
    cur = start
    while len(order) < t.n:
        nxt = [w for w in adj[cur] if w != prev][0]
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def spider_root_and_legs(t: Tree) -> tuple[int, list[list[int]]] | None:
    """Root label and per-leg outward vertex lists, or None if not a spider.

    Paths count as spiders only when some vertex has degree >= 3, so use
    `is_path` first when routing.
    """
    deg = t.degrees()
    hubs = [v for v, d in deg.items() if d >= 3]
    if len(hubs) != 1:
        return None
    root = hubs[0]
    adj = t.adjacency()
    legs = []
    for nb in sorted(adj[root]):
        leg = [nb]
        prev, cur = root, nb
        while True:
            nxts = [w for w in adj[cur] if w != prev]
            if not nxts:
                break
            if len(nxts) > 1:
                return None
            prev, cur = cur, nxts[0]
            leg.append(cur)
        legs.append(leg)
    return root, legs


def classify(t: Tree) -> tuple[str, object]:
    """("path", n) | ("star", n) | ("spider", leg lengths) | ("generic", None)."""
    if is_path(t):
        return "path", t.n
    if is_star(t):
        return "star", t.n
    rl = spider_root_and_legs(t)
    if rl is not None:
        return "spider", tuple(len(leg) for leg in rl[1])
    return "generic", None


def parse_tree_spec(spec: str) -> Tree:
    """Parse `path:N`, `star:N`, `spider:a,b,c` or `edges:1-2,2-3,...`."""
    spec = spec.strip()
    if ":" not in spec:
        raise TreeSpecError(f"unrecognized tree spec '{spec}' (missing ':')")
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    if kind in ("path", "star"):
        try:
            n = int(rest)
        except ValueError:
            raise TreeSpecError(f"bad vertex count '{rest}' in '{spec}'") from None
        if n < 1:
            raise TreeSpecError(f"vertex count must be positive, got '{rest}'")
        return make_path(n) if kind == "path" else make_star(n)
    if kind == "spider":
        legs = []
        for tok in rest.split(","):
            tok = tok.strip()
            try:
                leg = int(tok)
            except ValueError:
                raise TreeSpecError(f"bad leg length '{tok}' in '{spec}'") from None
            if leg < 1:
                raise TreeSpecError(f"leg length must be positive, got '{tok}'")
            legs.append(leg)
        if not legs:
            raise TreeSpecError(f"empty leg list in '{spec}'")
        return make_spider(legs)
    if kind == "edges":
        edges = []
        labels: set[int] = set()
        for tok in rest.split(","):
            tok = tok.strip()
            a, sep, b = tok.partition("-")
            if not sep:
                raise TreeSpecError(f"bad edge token '{tok}' (expected 'a-b')")
            try:
                u, w = int(a), int(b)
            except ValueError:
                raise TreeSpecError(f"bad edge token '{tok}'") from None
            edges.append((u, w))
            labels |= {u, w}
        if not edges:
            raise TreeSpecError(f"empty edge list in '{spec}'")
        n = max(labels)
        if labels != set(range(1, n + 1)):
            missing = sorted(set(range(1, n + 1)) - labels)
            raise TreeSpecError(f"labels must be exactly 1..{n}; missing {missing}")
        try:
            return Tree(n, tuple(edges))
        except ValueError as e:
            raise TreeSpecError(f"invalid tree '{spec}': {e}") from None
    raise TreeSpecError(f"unrecognized tree kind '{kind}'")


def tree_spec_of(t: Tree) -> str:
    """Shortest spec string that reparses to this tree's shape."""
    kind, arg = classify(t)
    if kind == "path":
        return f"path:{arg}"
    if kind == "star":
        return f"star:{arg}"
    if kind == "spider":
        return "spider:" + ",".join(str(l) for l in arg)
    return "edges:" + ",".join(f"{a}-{b}" for a, b in t.edges)
