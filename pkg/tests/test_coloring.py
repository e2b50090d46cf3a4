import json
import random

import pytest

from tmclab import graph as g
from tmclab.coloring import (
    ColoringMismatchError,
    TotalColoring,
    TreeFamily,
    decompose,
    family_to_coloring,
    verify_tmc,
    waste,
    construct_theorem1,
)
from tmclab.graph import Graph
from tmclab.solver import tmc_exact
from tmclab.spanning import DisconnectedGraphError, spanning_stats

from conftest import random_connected


def rainbow(G: Graph) -> TotalColoring:
    return TotalColoring(tuple(range(G.n)), {e: G.n + i for i, e in enumerate(G.edges)})


def test_monochrome_connected_is_valid():
    for G in (g.path(5), g.cycle(6), g.petersen(), g.star(4)):
        assert verify_tmc(G, TotalColoring.monochrome(G)) == {"ok": True, "failing_pair": None}


def test_rainbow_p3_fails_on_ends():
    assert verify_tmc(g.path(3), rainbow(g.path(3))) == {"ok": False, "failing_pair": (0, 2)}


def test_rainbow_complete_valid():
    assert verify_tmc(g.complete(5), rainbow(g.complete(5)))["ok"]


def test_internal_vertex_color_matters():
    # P3 with both edges red but the middle vertex blue: no monochromatic path
    G = g.path(3)
    col = TotalColoring((0, 1, 0), {(0, 1): 0, (1, 2): 0})
    assert verify_tmc(G, col)["failing_pair"] == (0, 2)
    ok = TotalColoring((5, 0, 7), {(0, 1): 0, (1, 2): 0})
    assert verify_tmc(G, ok)["ok"]


def test_lex_first_failing_pair():
    # C5 rainbow: nonadjacent pairs (0,2),(0,3),(1,3),...; first is (0,2)
    assert verify_tmc(g.cycle(5), rainbow(g.cycle(5)))["failing_pair"] == (0, 2)


def test_dimension_mismatch():
    G = g.path(3)
    with pytest.raises(ColoringMismatchError):
        verify_tmc(G, TotalColoring((0, 0), {(0, 1): 0, (1, 2): 0}))
    with pytest.raises(ColoringMismatchError):
        verify_tmc(G, TotalColoring((0, 0, 0), {(0, 1): 0}))


def test_merging_colors_preserves_validity():
    rng = random.Random(5)
    for _ in range(100):
        G = random_connected(rng, rng.randint(3, 8), 0.3)
        col = construct_theorem1(G)
        cs = sorted(set(col.vertex_color) | set(col.edge_color.values()))
        a, b = rng.sample(cs, 2) if len(cs) > 1 else (cs[0], cs[0])
        merge = lambda c: a if c == b else c
        merged = TotalColoring(tuple(map(merge, col.vertex_color)),
                               {e: merge(c) for e, c in col.edge_color.items()})
        assert verify_tmc(G, merged)["ok"]


def test_json_roundtrip():
    col = construct_theorem1(g.cycle(5))
    data = col.to_json()
    assert data["schema"] == "tmc-lab/1" and data["n"] == 5
    back = TotalColoring.from_json(json.dumps(data))
    assert back.vertex_color == col.vertex_color and dict(back.edge_color) == dict(col.edge_color)
    with pytest.raises(ColoringMismatchError):
        TotalColoring.from_json(dict(data, n=4))


# ----------------------------------------------------------- construction

@pytest.mark.parametrize("G,colors", [(g.path(4), 3), (g.cycle(4), 4), (g.star(3), 4)])
def test_construct_examples(G, colors):
    col = construct_theorem1(G)
    assert verify_tmc(G, col)["ok"]
    assert col.num_colors == colors


def test_construct_degenerate_and_disconnected():
    assert construct_theorem1(Graph(1)).num_colors == 1
    assert construct_theorem1(g.complete(2)).num_colors == 3
    with pytest.raises(DisconnectedGraphError):
        construct_theorem1(Graph(3, ((0, 1),)))


def test_construct_color_count_formula():
    rng = random.Random(2)
    for _ in range(150):
        G = random_connected(rng, rng.randint(3, 10), rng.random() * 0.4)
        col = construct_theorem1(G)
        assert verify_tmc(G, col)["ok"]
        assert col.num_colors == G.m - G.n + 2 + spanning_stats(G).l


# ------------------------------------------------------------- decompose

def test_decompose_constructed_c5():
    G = g.cycle(5)
    classes, report = decompose(G, construct_theorem1(G))
    big = [r for r in report if r["nontrivial"]]
    assert len(big) == 1 and big[0]["is_tree"] and big[0]["internal_colored"]
    assert sum(len(c.edges) for c in classes) == G.m


def test_decompose_monochrome_triangle_not_tree():
    _, report = decompose(g.complete(3), TotalColoring.monochrome(g.complete(3)))
    assert report == [{"color": 0, "edges": 3, "nontrivial": True, "is_tree": False, "internal_colored": True}]


def test_decompose_solver_certificate():
    G = g.complete_minus(4, "K2")
    out = tmc_exact(G)
    _, report = decompose(G, out.certificate)
    assert all(r["is_tree"] and r["internal_colored"] for r in report if r["nontrivial"])


# ---------------------------------------------------------------- families

def test_family_examples():
    assert family_to_coloring(g.complete(4), []).num_colors == 10
    G = g.complete_minus(4, "K2")  # missing edge (0, 1)
    col = family_to_coloring(G, [[(0, 2), (1, 2)]])
    assert col.num_colors == 7 and verify_tmc(G, col)["ok"]
    S = g.star(4)
    col = family_to_coloring(S, [S.edges])
    assert col.num_colors == 5 and verify_tmc(S, col)["ok"]


def test_family_rejects_foreign_edges():
    with pytest.raises(ValueError):
        family_to_coloring(g.path(4), [[(0, 1), (1, 3)]])


@pytest.mark.parametrize("tree,w", [
    ([(0, 1), (1, 2)], 2),
    ([(0, 1), (0, 2), (0, 3)], 3),
    ([(0, 1), (1, 2), (2, 3)], 4),
])
def test_waste_examples(tree, w):
    assert waste(tree) == w


def test_waste_errors():
    with pytest.raises(ValueError):
        waste([(0, 1)])
    with pytest.raises(ValueError):
        waste([(0, 1), (1, 2), (0, 2)])


@pytest.mark.parametrize("trees", [
    [[(0, 1), (1, 2)], [(1, 2), (2, 3)]],           # shared edge
    [[(0, 1), (1, 2)], [(0, 3), (3, 2)]],           # two shared vertices
    [[(0, 1), (1, 2)], [(3, 1), (1, 4)]],           # shared internal vertex
    [[(0, 1)]],                                     # too small
])
def test_tree_family_violations(trees):
    with pytest.raises(ValueError):
        TreeFamily(tuple(frozenset(t) for t in trees))


def test_family_color_count_identity():
    # colors = m + n - total waste for any simple family
    rng = random.Random(9)
    K = g.complete(7)
    for _ in range(200):
        verts = list(range(7))
        rng.shuffle(verts)
        trees = []
        # disjoint paths on consecutive shuffled vertices
        i = 0
        while i + 2 < 7:
            k = rng.randint(3, 7 - i)
            seg = verts[i:i + k]
            trees.append(frozenset((min(a, b), max(a, b)) for a, b in zip(seg, seg[1:])))
            i += k
        fam = TreeFamily(tuple(trees))
        col = family_to_coloring(K, fam)
        assert col.num_colors == K.m + K.n - fam.total_waste()


# -------------------------------------------- brute force over total colorings

def _set_partitions(N):
    """Restricted growth strings of length N."""
    a = [0] * N

    def rec(i, mx):
        if i == N:
            yield tuple(a)
            return
        for c in range(mx + 2):
            a[i] = c
            yield from rec(i + 1, max(mx, c))

    if N == 0:
        yield ()
    else:
        yield from rec(0, -1)


def brute_tmc(G: Graph) -> int:
    N = G.n + G.m
    by_k: dict[int, list] = {}
    for rgs in _set_partitions(N):
        by_k.setdefault(max(rgs) + 1, []).append(rgs)
    for k in sorted(by_k, reverse=True):
        for rgs in by_k[k]:
            col = TotalColoring(rgs[:G.n], dict(zip(G.edges, rgs[G.n:])))
            if verify_tmc(G, col)["ok"]:
                return k
    raise AssertionError


def test_exact_matches_brute_force_colorings():
    for n in range(2, 5):
        for G in g.enumerate_connected_graphs(n):
            assert tmc_exact(G).value == brute_tmc(G), G.edges
