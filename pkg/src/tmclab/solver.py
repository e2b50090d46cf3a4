"""Exact tmc(G) at desk scale.

Every connected graph has an extremal coloring whose nontrivial color trees
pairwise share at most one vertex. Such a coloring is fixed by its family of
trees, and it uses m + n - sum(e_i + q_i - 1) colors; it is valid exactly
when every nonadjacent pair lies inside one tree. So tmc(G) = m + n - W*,
with W* the least total waste of a covering family.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .coloring import TotalColoring, TreeFamily, family_to_coloring, verify_tmc
from .graph import Edge, Graph, is_connected
from .spanning import leaf_lower_bound, spanning_stats

# above this order the exact l(G) search is replaced by the greedy leaf bound
EXACT_L_MAX_N = 16

EXACT = "exact-bnb"
ORACLE = "oracle"
BOUNDS = "bounds-only"


@dataclass(frozen=True)
class TmcOutcome:
    lb: int
    ub: int
    method: str
    value: int | None = None
    certificate: TotalColoring | None = None
    family: tuple[frozenset[Edge], ...] | None = None

    @property
    def exact(self) -> bool:
        return self.value is not None

    def to_json(self) -> dict:
        return {
            "tmc": self.value,
            "lb": self.lb,
            "ub": self.ub,
            "method": self.method,
            "exact": self.exact,
            "certificate": self.certificate.to_json() if self.certificate else None,
        }


def tmc_lower_bound(G: Graph) -> int:
    if not is_connected(G):
        return 0
    if G.n == 1:
        return 1
    return G.m - G.n + 2 + spanning_stats(G).l


def tmc_upper_bound(G: Graph) -> int:
    if not is_connected(G):
        return 0
    if G.is_complete():
        return G.m + G.n
    degree_bound = G.m - G.n + min(G.degrees) + 1 + spanning_stats(G).l
    return min(G.m + G.n - 2, degree_bound)


def certified_bounds(G: Graph) -> tuple[int, int]:
    """(lower, upper) bounds on tmc that stay cheap at any order."""
    if G.n <= EXACT_L_MAX_N:
        return tmc_lower_bound(G), tmc_upper_bound(G)
    if not is_connected(G):
        return 0, 0
    if G.is_complete():
        return G.m + G.n, G.m + G.n
    lb = G.m - G.n + 2 + leaf_lower_bound(G)
    return lb, min(G.m + G.n - 2, G.m + min(G.degrees))


# ------------------------------------------------------------ branch and bound

class _Search:
    def __init__(self, G: Graph):
        self.G = G
        self.n = G.n
        self.nb = G.nbr_mask
        self.eidx = G.edge_index
        self.pairs = G.nonadjacent_pairs()
        self.best = None
        self.best_family: list | None = None
        self.nodes = 0

    # a tree is (vmask, imask, emask, edges tuple)
    def uncovered(self, trees) -> list[Edge]:
        out = []
        for u, v in self.pairs:
            bit = (1 << u) | (1 << v)
            if not any(t[0] & bit == bit for t in trees):
                out.append((u, v))
        return out

    @staticmethod
    def pair_components(pairs: list[Edge]) -> int:
        parent: dict[int, int] = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in pairs:
            a, b = find(u), find(v)
            if a != b:
                parent[max(a, b)] = min(a, b)
        return sum(1 for x in parent if find(x) == x)

    def candidates(self, u: int, v: int, trees, unc_mask: list[int], budget: int):
        """All trees through u and v compatible with `trees` with waste <= budget.

        Trees are grown from u one frontier edge at a time; skipping frontier
        entries permanently excludes them, which lists each tree once.
        """
        used_e = 0
        used_i = 0
        for t in trees:
            used_e |= t[2]
            used_i |= t[1]
        others = [t[0] for t in trees]
        eidx = self.eidx
        vbit = 1 << v
        out = []
        deg = [0] * self.n

        def frontier_from(x, smask):
            return [(x, y) for y in sorted(self.G.adj[x]) if not (smask >> y) & 1]

        def grow(smask, imask, emask, edges, nedges, F):
            if smask & vbit and nedges >= 2:
                # dominance: every leaf must pair with an uncovered partner inside the tree
                ok = True
                for x in range(self.n):
                    if deg[x] == 1 and not unc_mask[x] & smask:
                        ok = False
                        break
                if ok:
                    out.append((nedges + bin(imask).count("1") - 1, smask, imask, emask, edges))
            for i in range(len(F)):
                x, y = F[i]
                ybit = 1 << y
                if smask & ybit:
                    continue
                e = eidx[(x, y) if x < y else (y, x)]
                if used_e >> e & 1:
                    continue
                clash = False
                for om in others:
                    if om & ybit and om & smask:
                        clash = True
                        break
                if clash:
                    continue
                new_imask = imask
                if deg[x] == 1:
                    if used_i >> x & 1:
                        continue
                    new_imask |= 1 << x
                w = nedges + 1 + bin(new_imask).count("1") - 1
                if nedges + 1 >= 2 and w > budget:
                    continue
                deg[x] += 1
                deg[y] = 1
                nF = F[i + 1:] + frontier_from(y, smask | ybit)
                grow(smask | ybit, new_imask, emask | (1 << e), edges + ((x, y) if x < y else (y, x),), nedges + 1, nF)
                deg[x] -= 1
                deg[y] = 0

        deg[u] = 0
        grow(1 << u, 0, 0, (), 0, frontier_from(u, 1 << u))
        out.sort(key=lambda c: c[0])
        return out

    def run(self, incumbent_waste: int, incumbent_family: list):
        self.best = incumbent_waste
        self.best_family = incumbent_family
        self._recurse([], 0)
        return self.best, self.best_family

    def _recurse(self, trees, cost):
        self.nodes += 1
        unc = self.uncovered(trees)
        if not unc:
            if cost < self.best:
                self.best = cost
                self.best_family = [t[3] for t in trees]
            return
        if cost + 2 * self.pair_components(unc) >= self.best:
            return
        unc_mask = [0] * self.n
        for a, b in unc:
            unc_mask[a] |= 1 << b
            unc_mask[b] |= 1 << a
        u, v = unc[0]
        budget = self.best - 1 - cost
        for w, smask, imask, emask, edges in self.candidates(u, v, trees, unc_mask, budget):
            if cost + w >= self.best:
                break
            self._recurse(trees + [(smask, imask, emask, edges)], cost + w)


def tmc_exact(G: Graph, max_n: int = 8) -> TmcOutcome:
    """Exact tmc by branch and bound; bounds-only when n exceeds ``max_n``."""
    if not is_connected(G):
        return TmcOutcome(lb=0, ub=0, method=EXACT, value=0)
    if G.n == 1:
        return TmcOutcome(lb=1, ub=1, method=EXACT, value=1, certificate=TotalColoring((0,), {}), family=())
    if G.n > max_n:
        lb, ub = certified_bounds(G)
        return TmcOutcome(lb=lb, ub=ub, method=BOUNDS)
    lb, ub = tmc_lower_bound(G), tmc_upper_bound(G)
    total = G.m + G.n
    if not G.nonadjacent_pairs():
        fam = ()
    else:
        tree = tuple(sorted(spanning_stats(G).witness_tree))
        start_waste = total - lb  # the constructive coloring's family is the witness tree alone
        _, fam_list = _Search(G).run(start_waste, [tree])
        fam = tuple(frozenset(t) for t in fam_list)
    family = TreeFamily(fam)
    cert = family_to_coloring(G, family)
    return TmcOutcome(lb=lb, ub=ub, method=EXACT, value=total - family.total_waste(), certificate=cert, family=fam)


# --------------------------------------------------------------- oracle

def _all_subtrees(G: Graph) -> list[tuple[frozenset[int], frozenset[int], frozenset[Edge]]]:
    """Every tree subgraph of G with at least two edges, by brute force over edge subsets."""
    out = []
    edges = G.edges
    for k in range(2, G.n):
        for combo in combinations(edges, k):
            verts = {x for e in combo for x in e}
            if len(verts) != k + 1:
                continue
            # k edges on k+1 vertices: a tree iff connected
            parent = {x: x for x in verts}

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            comps = k + 1
            for a, b in combo:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    comps -= 1
            if comps != 1:
                continue
            deg: dict[int, int] = {}
            for a, b in combo:
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            internal = frozenset(x for x, d in deg.items() if d >= 2)
            out.append((frozenset(verts), internal, frozenset(combo)))
    return out


def tmc_oracle(G: Graph) -> int:
    """tmc by exhaustive search over every simple family of subtrees (n <= 5)."""
    if G.n > 5:
        raise ValueError("the exhaustive oracle is limited to n <= 5")
    if not is_connected(G):
        return 0
    pairs = G.nonadjacent_pairs()
    trees = _all_subtrees(G)
    wastes = [len(t[2]) + len(t[1]) - 1 for t in trees]
    best = [None]

    def compatible(a, b):
        return not (a[2] & b[2]) and len(a[0] & b[0]) <= 1 and not (a[1] & b[1])

    def covered(chosen):
        return all(any(u in trees[i][0] and v in trees[i][0] for i in chosen) for u, v in pairs)

    def rec(start, chosen, w):
        if covered(chosen) and (best[0] is None or w < best[0]):
            best[0] = w
        for i in range(start, len(trees)):
            if all(compatible(trees[i], trees[j]) for j in chosen):
                rec(i + 1, chosen + [i], w + wastes[i])

    rec(0, [], 0)
    return G.m + G.n - best[0]


def certify(G: Graph, outcome: TmcOutcome) -> bool:
    """Check an exact outcome's certificate: valid and using exactly `value` colors."""
    if outcome.value is None or outcome.certificate is None:
        return False
    return verify_tmc(G, outcome.certificate)["ok"] and outcome.certificate.num_colors == outcome.value
