"""Max-leaf spanning trees via minimum connected dominating sets.

A vertex set is a connected dominating set exactly when its complement is
contained in the leaf set of some spanning tree, so l(G) = n - gamma_c(G).
The exact search walks candidate sets by increasing size in lexicographic
order; the first hit is both optimal and the lexicographically smallest
optimum.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _kernels
from .graph import Edge, Graph, is_connected


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class SpanningStats:
    l: int
    q: int
    gamma_c: int
    witness_tree: frozenset[Edge]
    witness_cds: frozenset[int]
    degenerate: bool = False


def tree_leaf_profile(tree: frozenset[Edge] | set[Edge] | list[Edge]) -> dict[str, set[int]]:
    edges = {(min(e), max(e)) for e in tree}
    if not edges:
        raise ValueError("empty edge set is not a tree with leaves")
    verts = {v for e in edges for v in e}
    if len(edges) != len(verts) - 1:
        raise ValueError("edge set is not a tree (cycle or missing vertices)")
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x] - seen:
            seen.add(y)
            stack.append(y)
    if seen != verts:
        raise ValueError("edge set is not connected")
    leaves = {v for v in verts if len(adj[v]) == 1}
    return {"leaves": leaves, "internal": verts - leaves}


def _is_cds(G: Graph, mask: int, full: int) -> bool:
    nb = G.nbr_mask
    dom = mask
    rest = mask
    while rest:
        low = rest & -rest
        dom |= nb[low.bit_length() - 1]
        rest ^= low
    if dom != full:
        return False
    # induced connectivity
    start = mask & -mask
    reach = start
    frontier = start
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = nb[low.bit_length() - 1] & mask & ~reach
        reach |= new
        frontier |= new
    return reach == mask


def min_connected_dominating_set(G: Graph) -> tuple[int, ...]:
    full = (1 << G.n) - 1
    for k in range(1, G.n + 1):
        for combo in combinations(range(G.n), k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if _is_cds(G, mask, full):
                return combo
    raise DisconnectedGraphError("graph has no connected dominating set")


def _tree_from_cds(G: Graph, cds: tuple[int, ...]) -> frozenset[Edge]:
    inside = set(cds)
    edges = set()
    seen = {cds[0]}
    queue = [cds[0]]
    while queue:
        x = queue.pop(0)
        for y in sorted(G.adj[x]):
            if y in inside and y not in seen:
                seen.add(y)
                edges.add((min(x, y), max(x, y)))
                queue.append(y)
    for v in range(G.n):
        if v not in inside:
            anchor = min(G.adj[v] & inside)
            edges.add((min(v, anchor), max(v, anchor)))
    return frozenset(edges)


def spanning_stats(G: Graph) -> SpanningStats:
    if G.n == 0:
        raise ValueError("empty graph")
    if not is_connected(G):
        raise DisconnectedGraphError("spanning statistics need a connected graph")
    if G.n == 1:
        return SpanningStats(l=0, q=1, gamma_c=1, witness_tree=frozenset(), witness_cds=frozenset({0}), degenerate=True)
    if G.n == 2:
        return SpanningStats(l=2, q=0, gamma_c=0, witness_tree=frozenset({(0, 1)}), witness_cds=frozenset())
    cds = min_connected_dominating_set(G)
    tree = _tree_from_cds(G, cds)
    gc = len(cds)
    return SpanningStats(l=G.n - gc, q=gc, gamma_c=gc, witness_tree=tree, witness_cds=frozenset(cds))


def max_leaves(G: Graph) -> int:
    return spanning_stats(G).l


def leaf_lower_bound(G: Graph, rng_seed=None) -> int:
    """Leaf count of a greedily grown spanning tree; never exceeds l(G).

    Growth starts at a maximum-degree vertex and repeatedly expands the tree
    vertex with the largest net leaf gain, lowest index first. The result is
    deterministic; ``rng_seed`` is accepted for interface symmetry and unused.
    """
    if G.n == 1:
        return 0
    e = np.asarray(G.edges, dtype=np.int64).reshape(-1, 2)
    indptr, indices = _kernels.csr_from_edges(G.n, e[:, 0], e[:, 1])
    val = _kernels.greedy_leaves(G.n, indptr, indices)
    if val < 0:
        raise DisconnectedGraphError("leaf lower bound needs a connected graph")
    return val
