"""Simple undirected graphs on vertices 0..n-1, plus the structural
predicates the tmc bounds and theorem checks are built on."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. Edges are stored as sorted pairs (u, v), u < v."""

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("order must be non-negative")
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            seen.add(_norm(u, v))
        if len(seen) != len(self.edges):
            raise ValueError("multi-edge in edge list")
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> Graph:
        return cls(n, tuple(_norm(int(u), int(v)) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def nbr_mask(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.bool_)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = True
            a[e[:, 1], e[:, 0]] = True
        return a

    def nonadjacent_pairs(self) -> list[Edge]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if v not in self.adj[u]]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def without_edge(self, u: int, v: int) -> Graph:
        e = _norm(u, v)
        if e not in self.edge_set:
            raise KeyError(e)
        return Graph(self.n, tuple(x for x in self.edges if x != e))

    def with_edge(self, u: int, v: int) -> Graph:
        return Graph.from_edges(self.n, self.edges + (_norm(u, v),))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex v renamed to perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class MultipartiteSpec:
    sizes: tuple[int, ...]
    r: int = field(init=False)
    t: int = field(init=False)

    def __post_init__(self):
        sizes = tuple(sorted((int(s) for s in self.sizes), reverse=True))
        if not sizes or sizes[-1] < 1:
            raise ValueError("part sizes must be positive and at least one part given")
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "r", len(sizes))
        object.__setattr__(self, "t", sum(1 for s in sizes if s >= 2))

    @property
    def n(self) -> int:
        return sum(self.sizes)


# ---------------------------------------------------------------- generators

def complete(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def empty(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """K_{1,n}: centre 0 joined to n leaves."""
    if n < 1:
        raise ValueError("star needs at least one leaf")
    return Graph(n + 1, tuple((0, i) for i in range(1, n + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def complete_multipartite(spec: MultipartiteSpec | Sequence[int]) -> Graph:
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(tuple(spec))
    part = []
    for i, s in enumerate(spec.sizes):
        part.extend([i] * s)
    n = len(part)
    return Graph(n, tuple((u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]))


# deleted patterns for K_n - H, laid out on vertices 0..3
PATTERNS: dict[str, tuple[int, tuple[Edge, ...]]] = {
    "K2": (2, ((0, 1),)),
    "P3": (3, ((0, 1), (1, 2))),
    "K3": (3, ((0, 1), (0, 2), (1, 2))),
    "P4": (4, ((0, 1), (1, 2), (2, 3))),
    "2K2": (4, ((0, 1), (2, 3))),
    "K4": (4, tuple(combinations(range(4), 2))),
    "K4-K2": (4, ((0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    "K4-P3": (4, ((0, 3), (1, 2), (1, 3), (2, 3))),
    "C4": (4, ((0, 1), (1, 2), (2, 3), (0, 3))),
    "K1,3": (4, ((0, 1), (0, 2), (0, 3))),
}


def complete_minus(n: int, pattern: str) -> Graph:
    """K_n with the edges of `pattern` removed, pattern anchored on vertices 0..3."""
    try:
        size, removed = PATTERNS[pattern]
    except KeyError:
        raise ValueError(f"unknown pattern {pattern!r}; known: {sorted(PATTERNS)}") from None
    if size > n:
        raise ValueError(f"pattern {pattern} needs {size} vertices, n={n}")
    gone = set(removed)
    return Graph(n, tuple(e for e in combinations(range(n), 2) if e not in gone))


def tree_from_prufer(seq: Sequence[int]) -> Graph:
    n = len(seq) + 2
    if any(not 0 <= x < n for x in seq):
        raise ValueError("Prufer entries must lie in 0..len(seq)+1")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(n) if degree[w] == 1)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


_GENERATORS = {
    "complete": complete,
    "path": path,
    "cycle": cycle,
    "star": star,
    "complete_multipartite": complete_multipartite,
    "complete_minus": complete_minus,
    "tree_from_prufer": tree_from_prufer,
}


def generate(kind: str, *params) -> Graph:
    try:
        fn = _GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown generator {kind!r}") from None
    return fn(*params)


# ------------------------------------------------------------------ metrics

def bfs_distances(G: Graph, source: int, removed: frozenset[int] = frozenset()) -> list[float]:
    dist = [math.inf] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in G.adj[x]:
            if dist[y] == math.inf and y not in removed:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def is_connected(G: Graph, removed: Iterable[int] = ()) -> bool:
    removed = frozenset(removed)
    rest = [v for v in range(G.n) if v not in removed]
    if len(rest) <= 1:
        return True
    dist = bfs_distances(G, rest[0], removed)
    return all(dist[v] < math.inf for v in rest)


def diameter(G: Graph) -> float:
    if G.n == 0:
        return 0
    best = 0
    for s in range(G.n):
        d = max(bfs_distances(G, s))
        if d == math.inf:
            return math.inf
        best = max(best, d)
    return best


def cut_vertices(G: Graph) -> set[int]:
    """Vertices whose removal increases the number of components (Tarjan lowpoint)."""
    disc = [-1] * G.n
    low = [0] * G.n
    cuts: set[int] = set()
    timer = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(G.adj[root])))]
        while stack:
            x, parent, it = stack[-1]
            advanced = False
            for y in it:
                if disc[y] == -1:
                    disc[y] = low[y] = timer
                    timer += 1
                    if x == root:
                        root_children += 1
                    stack.append((y, x, iter(sorted(G.adj[y]))))
                    advanced = True
                    break
                if y != parent:
                    low[x] = min(low[x], disc[y])
            if advanced:
                continue
            stack.pop()
            if parent != -1:
                low[parent] = min(low[parent], low[x])
                if parent != root and low[x] >= disc[parent]:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return cuts


def is_triangle_free(G: Graph) -> bool:
    nb = G.nbr_mask
    return not any(nb[u] & nb[v] for u, v in G.edges)


def metrics(G: Graph) -> dict:
    degs = G.degrees
    diam = diameter(G)
    return {
        "connected": diam != math.inf,
        "diameter": diam,
        "min_degree": min(degs) if degs else 0,
        "max_degree": max(degs) if degs else 0,
        "cut_vertices": cut_vertices(G),
        "triangle_free": is_triangle_free(G),
    }


def vertex_connectivity_at_least(G: Graph, k: int) -> bool:
    """True iff G has more than k vertices and no set of fewer than k vertices disconnects it."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if G.n <= k:
        return False
    for size in range(k):
        for cut in combinations(range(G.n), size):
            if not is_connected(G, cut):
                return False
    return True


def complement(G: Graph) -> Graph:
    es = G.edge_set
    return Graph(G.n, tuple(e for e in combinations(range(G.n), 2) if e not in es))


# ------------------------------------------------------------- isomorphism

_PERM_CACHE: dict[int, np.ndarray] = {}


def _perms(n: int) -> np.ndarray:
    if n not in _PERM_CACHE:
        from itertools import permutations

        _PERM_CACHE[n] = np.array(list(permutations(range(n))), dtype=np.int64).reshape(-1, n)
    return _PERM_CACHE[n]


def canonical_code(G: Graph) -> int:
    """Minimum upper-triangle adjacency bit-string over all n! relabelings.

    Bit order: pairs (0,1), (0,2), ..., (n-2,n-1) from most to least significant.
    """
    if G.n > 8:
        raise ValueError("canonical form is limited to n <= 8")
    if G.n <= 1:
        return 0
    code, _ = _kernels.min_perm_code(G.adjacency_matrix(), _perms(G.n))
    return int(code)


def canonical_form(G: Graph) -> Graph:
    if G.n <= 1:
        return G
    code, best = _kernels.min_perm_code(G.adjacency_matrix(), _perms(G.n))
    return graph_from_code(G.n, int(code))


def graph_from_code(n: int, code: int) -> Graph:
    pairs = list(combinations(range(n), 2))
    top = len(pairs) - 1
    return Graph(n, tuple(p for i, p in enumerate(pairs) if code >> (top - i) & 1))


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.m != H.m:
        return False
    if sorted(G.degrees) != sorted(H.degrees):
        return False
    return canonical_code(G) == canonical_code(H)


def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class of connected n-vertex graphs.

    Classes are grown edge by edge from the empty graph, deduplicated by
    canonical code at each size; output is ordered by (m, code).
    """
    if n > 7:
        raise ValueError("enumeration is limited to n <= 7")
    if n < 1:
        return
    if n == 1:
        yield Graph(1)
        return
    level = {0}
    pairs = list(combinations(range(n), 2))
    top = len(pairs) - 1
    for m in range(len(pairs) + 1):
        reps = sorted(level)
        for code in reps:
            G = graph_from_code(n, code)
            if m >= n - 1 and is_connected(G):
                yield G
        nxt = set()
        for code in reps:
            for i in range(len(pairs)):
                bit = 1 << (top - i)
                if not code & bit:
                    H = graph_from_code(n, code | bit)
                    nxt.add(canonical_code(H))
        level = nxt
