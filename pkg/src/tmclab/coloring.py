"""Total colorings: verification, color-class structure, and constructions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import Edge, Graph, is_connected
from .spanning import DisconnectedGraphError, spanning_stats, tree_leaf_profile

SCHEMA = "tmc-lab/1"


class ColoringMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class TotalColoring:
    vertex_color: tuple[int, ...]
    edge_color: Mapping[Edge, int]

    @property
    def num_colors(self) -> int:
        return len(set(self.vertex_color) | set(self.edge_color.values()))

    def check_against(self, G: Graph) -> None:
        if len(self.vertex_color) != G.n:
            raise ColoringMismatchError(f"coloring has {len(self.vertex_color)} vertex colors, graph has n={G.n}")
        if set(self.edge_color) != G.edge_set:
            raise ColoringMismatchError("colored edges do not match the graph's edge set")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": len(self.vertex_color),
            "vertex_colors": list(self.vertex_color),
            "edge_colors": [[u, v, c] for (u, v), c in sorted(self.edge_color.items())],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> TotalColoring:
        if isinstance(data, str):
            data = json.loads(data)
        vc = tuple(int(c) for c in data["vertex_colors"])
        if "n" in data and int(data["n"]) != len(vc):
            raise ColoringMismatchError("'n' disagrees with the length of vertex_colors")
        ec = {}
        for u, v, c in data["edge_colors"]:
            u, v = int(u), int(v)
            ec[(min(u, v), max(u, v))] = int(c)
        return cls(vc, ec)

    @classmethod
    def monochrome(cls, G: Graph, color: int = 0) -> TotalColoring:
        return cls((color,) * G.n, {e: color for e in G.edges})


@dataclass(frozen=True)
class ColorClass:
    color: int
    edges: frozenset[Edge]
    vertices: frozenset[int]


def _connected_via(G: Graph, col: TotalColoring, u: int, v: int, c: int) -> bool:
    # usable vertices: u, v, and anything colored c (only those may be internal)
    ec = col.edge_color
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x != u and col.vertex_color[x] != c:
            continue
        for y in G.adj[x]:
            if y in seen or ec[(min(x, y), max(x, y))] != c:
                continue
            if y == v:
                return True
            if col.vertex_color[y] == c:
                seen.add(y)
                stack.append(y)
    return False


def verify_tmc(G: Graph, col: TotalColoring) -> dict:
    """Check that every vertex pair is joined by a total monochromatic path.

    Returns ``{"ok": bool, "failing_pair": (u, v) | None}``; the failing pair
    is the lexicographically first one without such a path.
    """
    col.check_against(G)
    colors_at = [set() for _ in range(G.n)]
    for (x, y), c in col.edge_color.items():
        colors_at[x].add(c)
        colors_at[y].add(c)
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if v in G.adj[u]:
                continue
            if not any(_connected_via(G, col, u, v, c) for c in sorted(colors_at[u] & colors_at[v])):
                return {"ok": False, "failing_pair": (u, v)}
    return {"ok": True, "failing_pair": None}


def decompose(G: Graph, col: TotalColoring) -> tuple[list[ColorClass], list[dict]]:
    col.check_against(G)
    by_color: dict[int, tuple[set, set]] = {}
    for v, c in enumerate(col.vertex_color):
        by_color.setdefault(c, (set(), set()))[1].add(v)
    for e, c in col.edge_color.items():
        by_color.setdefault(c, (set(), set()))[0].add(e)
    classes = []
    report = []
    for c in sorted(by_color):
        es, vs = by_color[c]
        classes.append(ColorClass(c, frozenset(es), frozenset(vs)))
        if not es:
            continue
        verts = vs | {x for e in es for x in e}
        deg = {x: 0 for x in verts}
        for a, b in es:
            deg[a] += 1
            deg[b] += 1
        is_tree = len(es) == len(verts) - 1 and _edges_connected(verts, es)
        internal = {x for x, d in deg.items() if d >= 2}
        report.append({
            "color": c,
            "edges": len(es),
            "nontrivial": len(es) >= 2,
            "is_tree": is_tree,
            "internal_colored": all(col.vertex_color[x] == c for x in internal),
        })
    return classes, report


def _edges_connected(verts: set[int], edges: Iterable[Edge]) -> bool:
    adj: dict[int, list[int]] = {x: [] for x in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == verts


def waste(tree: Iterable[Edge]) -> int:
    """Colors lost by one nontrivial color tree: edges + internal vertices - 1."""
    edges = {(min(e), max(e)) for e in tree}
    if len(edges) < 2:
        raise ValueError("waste is defined for trees with at least two edges")
    prof = tree_leaf_profile(edges)
    return len(edges) + len(prof["internal"]) - 1


@dataclass(frozen=True)
class TreeFamily:
    trees: tuple[frozenset[Edge], ...]

    def __post_init__(self):
        trees = tuple(frozenset((min(e), max(e)) for e in t) for t in self.trees)
        object.__setattr__(self, "trees", trees)
        profiles = []
        for t in trees:
            if len(t) < 2:
                raise ValueError("family trees need at least two edges")
            profiles.append(tree_leaf_profile(t))
        for i in range(len(trees)):
            vi = profiles[i]["leaves"] | profiles[i]["internal"]
            for j in range(i + 1, len(trees)):
                vj = profiles[j]["leaves"] | profiles[j]["internal"]
                if trees[i] & trees[j]:
                    raise ValueError(f"trees {i} and {j} share an edge")
                if len(vi & vj) > 1:
                    raise ValueError(f"trees {i} and {j} share more than one vertex")
                if profiles[i]["internal"] & profiles[j]["internal"]:
                    raise ValueError(f"trees {i} and {j} share an internal vertex")
        object.__setattr__(self, "_profiles", tuple(profiles))

    def internal(self, i: int) -> set[int]:
        return self._profiles[i]["internal"]

    def vertices(self, i: int) -> set[int]:
        p = self._profiles[i]
        return p["leaves"] | p["internal"]

    def total_waste(self) -> int:
        return sum(len(t) + len(self.internal(i)) - 1 for i, t in enumerate(self.trees))

    def covers(self, u: int, v: int) -> bool:
        return any(u in self.vertices(i) and v in self.vertices(i) for i in range(len(self.trees)))


def family_to_coloring(G: Graph, fam: TreeFamily | Sequence[Iterable[Edge]]) -> TotalColoring:
    """Tree i gets color i on its edges and internal vertices; everything else a fresh color."""
    if not isinstance(fam, TreeFamily):
        fam = TreeFamily(tuple(frozenset(t) for t in fam))
    for i, t in enumerate(fam.trees):
        if not t <= G.edge_set:
            raise ValueError(f"tree {i} uses edges outside the graph")
    vc: list[int | None] = [None] * G.n
    ec: dict[Edge, int] = {}
    for i, t in enumerate(fam.trees):
        for e in sorted(t):
            ec[e] = i
        for v in fam.internal(i):
            vc[v] = i
    nxt = len(fam.trees)
    for v in range(G.n):
        if vc[v] is None:
            vc[v] = nxt
            nxt += 1
    for e in G.edges:
        if e not in ec:
            ec[e] = nxt
            nxt += 1
    return TotalColoring(tuple(vc), ec)


def construct_theorem1(G: Graph) -> TotalColoring:
    """Coloring with m - n + 2 + l(G) colors built on a max-leaf spanning tree.

    Color 0 goes on the tree's edges and internal vertices; each leaf and each
    non-tree edge gets its own color.
    """
    if not is_connected(G):
        raise DisconnectedGraphError("the constructive coloring needs a connected graph")
    if G.n == 1:
        return TotalColoring((0,), {})
    tree = spanning_stats(G).witness_tree
    internal = tree_leaf_profile(tree)["internal"]
    vc = []
    nxt = 1
    for v in range(G.n):
        if v in internal:
            vc.append(0)
        else:
            vc.append(nxt)
            nxt += 1
    ec = {}
    for e in G.edges:
        if e in tree:
            ec[e] = 0
        else:
            ec[e] = nxt
            nxt += 1
    return TotalColoring(tuple(vc), ec)
