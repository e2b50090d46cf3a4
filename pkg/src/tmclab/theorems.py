"""Closed-form tmc values and the small/large characterizations, plus a sweep
harness that checks all of them against the exact solver."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import graph as g
from .graph import Graph, complement, cut_vertices, diameter, is_connected, is_isomorphic, is_triangle_free
from .graphio import emit_graph6
from .solver import tmc_exact, tmc_lower_bound, tmc_upper_bound
from .spanning import spanning_stats

# reporting order: cheapest predicate first, the 4-connectivity test last;
# values from different rules must agree anyway
RULE_ORDER = ("complete", "example1", "thm2b", "thm2c", "thm2d", "thm2e", "thm2a")

LARGE_TEMPLATES: dict[int, tuple[str, ...]] = {
    2: ("K2",),
    3: ("K3", "P3"),
    4: ("P4", "2K2", "K4", "K4-K2", "K4-P3", "C4", "K1,3"),
}


@dataclass(frozen=True)
class TheoremVerdict:
    rule: str
    value: int | None
    fired: tuple[tuple[str, int], ...] = ()
    details: dict = field(default_factory=dict)
    lb: int | None = None
    ub: int | None = None

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "tmc": self.value,
            "fired": [list(f) for f in self.fired],
            "details": self.details,
            "lb": self.lb,
            "ub": self.ub,
        }


def multipartite_parts(G: Graph) -> list[int] | None:
    """Part sizes if G is complete multipartite (non-adjacency is an equivalence), else None."""
    H = complement(G)
    seen = [False] * G.n
    parts = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = {s} | set(H.adj[s])
        for x in comp:
            if H.adj[x] | {x} != comp:
                return None
            seen[x] = True
        parts.append(len(comp))
    return sorted(parts, reverse=True)


def thm2c_holds(G: Graph) -> bool:
    n, m = G.n, G.m
    if n <= 3:
        return False
    return Fraction(max(G.degrees)) < Fraction(n) - Fraction(2 * m - 3 * (n - 1), n - 3)


def classify(G: Graph) -> TheoremVerdict:
    if not is_connected(G):
        return TheoremVerdict("disconnected", 0, (("disconnected", 0),), lb=0, ub=0)
    n, m = G.n, G.m
    fired: list[tuple[str, int]] = []
    details: dict = {}
    if G.is_complete():
        fired.append(("complete", m + n))
    parts = multipartite_parts(G)
    if parts is not None:
        r = len(parts)
        t = sum(1 for s in parts if s >= 2)
        fired.append(("example1", m + r - t))
        details["parts"] = parts
    if n > 3:
        conds = {
            "thm2b": lambda: is_triangle_free(G),
            "thm2c": lambda: thm2c_holds(G),
            "thm2d": lambda: diameter(G) >= 3,
            "thm2e": lambda: bool(cut_vertices(G)),
            "thm2a": lambda: g.vertex_connectivity_at_least(complement(G), 4),
        }
        hits = [rule for rule, test in conds.items() if test()]
        if hits:
            l = spanning_stats(G).l
            fired.extend((rule, m - n + 2 + l) for rule in hits)
            details["l"] = l
    if not fired:
        return TheoremVerdict("none", None, (), details, lb=tmc_lower_bound(G), ub=tmc_upper_bound(G))
    fired.sort(key=lambda f: RULE_ORDER.index(f[0]))
    rule, value = fired[0]
    return TheoremVerdict(rule, value, tuple(fired), details, lb=value, ub=value)


def is_tree(G: Graph) -> bool:
    return G.m == G.n - 1 and is_connected(G)


def is_path(G: Graph) -> bool:
    return is_tree(G) and max(G.degrees, default=0) <= 2


def is_cycle(G: Graph) -> bool:
    return G.n >= 3 and G.m == G.n and is_connected(G) and all(d == 2 for d in G.degrees)


def characterize_small(G: Graph) -> int | None:
    """tmc when it is 3, 4, 5 or 6, decided from structure alone; None otherwise."""
    if not is_connected(G) or G.n < 2:
        return None
    excess = G.m - G.n  # -1 tree, 0 unicyclic, 1 bicyclic
    if excess > 1:
        return None
    if is_path(G):
        return 3
    if G.n == 3 and G.m == 3:
        return 6
    if is_cycle(G):
        return 4
    l = spanning_stats(G).l
    if excess == -1:
        return {3: 4, 4: 5, 5: 6}.get(l)
    if excess == 0:
        return {3: 5, 4: 6}.get(l)
    if l == 3 and not is_isomorphic(G, g.complete_multipartite([2, 1, 1])):
        return 6
    return None


def match_large_template(G: Graph) -> tuple[str, int] | None:
    """(template name, codeficiency k) when G is K_n, or K_n - H for a listed pattern H."""
    if not is_connected(G):
        return None
    if G.is_complete():
        return ("Kn", 0)
    H = complement(G)
    touched = sorted({x for e in H.edges for x in e})
    if len(touched) > 4:
        return None
    idx = {v: i for i, v in enumerate(touched)}
    core = Graph.from_edges(len(touched), ((idx[a], idx[b]) for a, b in H.edges))
    for k, names in LARGE_TEMPLATES.items():
        for name in names:
            size, edges = g.PATTERNS[name]
            if size > G.n or size != core.n or len(edges) != core.m:
                continue
            if is_isomorphic(core, Graph.from_edges(size, edges)):
                return (name, k)
    return None


def characterize_large(G: Graph) -> int | None:
    hit = match_large_template(G)
    if hit is None:
        return None
    return G.m + G.n - hit[1]


# ------------------------------------------------------------------ sweep

SWEEP_COLUMNS = ["graph6", "n", "m", "l", "tmc_exact", "matched_rules", "predicted_value", "agree"]


@dataclass
class SweepReport:
    n_max: int
    rows: list[dict]
    discrepancies: list[tuple[str, str]]
    counts: dict[int, int]

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    @property
    def classes(self) -> int:
        return len(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: row[k] for k in SWEEP_COLUMNS})
        return buf.getvalue()

    def summary(self) -> dict:
        return {
            "n_max": self.n_max,
            "classes": self.classes,
            "classes_per_n": {str(k): v for k, v in sorted(self.counts.items())},
            "passed": self.passed,
            "discrepancies": [{"graph6": g6, "reason": why} for g6, why in self.discrepancies],
        }


def check_graph(G: Graph) -> tuple[dict, list[str]]:
    """Cross-check every theorem-derived value and characterization against tmc_exact."""
    out = tmc_exact(G, max_n=G.n)
    tmc = out.value
    n, m = G.n, G.m
    problems = []
    verdict = classify(G)
    small = characterize_small(G)
    large = characterize_large(G)
    for rule, val in verdict.fired:
        if val != tmc:
            problems.append(f"{rule} predicts {val}, exact {tmc}")
    if not out.lb <= tmc <= out.ub:
        problems.append(f"sandwich {out.lb} <= {tmc} <= {out.ub} fails")
    if small is not None and small != tmc:
        problems.append(f"small characterization predicts {small}, exact {tmc}")
    if tmc in (3, 4, 5, 6) and small != tmc:
        problems.append(f"exact {tmc} but small characterization gives {small}")
    if large is not None and large != tmc:
        problems.append(f"large characterization predicts {large}, exact {tmc}")
    if n >= 2 and tmc in (m + n, m + n - 2, m + n - 3, m + n - 4) and large != tmc:
        problems.append(f"exact {tmc} = m+n-{m + n - tmc} but no large template matches")
    if n >= 2 and tmc == m + n - 1:
        problems.append("exact value m+n-1 attained")
    if out.certificate is not None and out.certificate.num_colors != tmc:
        problems.append("certificate color count differs from value")
    predicted = verdict.value if verdict.value is not None else (small if small is not None else large)
    rules = [r for r, _ in verdict.fired]
    if small is not None:
        rules.append(f"small={small}")
    if large is not None:
        rules.append(f"large={match_large_template(G)[0]}")
    row = {
        "graph6": emit_graph6(G),
        "n": n,
        "m": m,
        "l": spanning_stats(G).l if n >= 2 else 0,
        "tmc_exact": tmc,
        "matched_rules": ";".join(rules),
        "predicted_value": "" if predicted is None else predicted,
        "agree": not problems,
    }
    return row, problems


def sweep_graphs(n_max: int) -> list[Graph]:
    if n_max > 7:
        raise ValueError("sweep is limited to n <= 7")
    return [G for n in range(1, n_max + 1) for G in g.enumerate_connected_graphs(n)]


def sweep_crosscheck(n_max: int, jobs: int = 1, graphs: Iterable[Graph] | None = None) -> SweepReport:
    graphs = list(graphs) if graphs is not None else sweep_graphs(n_max)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_graph, graphs, chunksize=8))
    else:
        results = [check_graph(G) for G in graphs]
    rows, discrepancies, counts = [], [], {}
    for G, (row, problems) in zip(graphs, results):
        rows.append(row)
        counts[G.n] = counts.get(G.n, 0) + 1
        for p in problems:
            discrepancies.append((row["graph6"], p))
    return SweepReport(n_max, rows, discrepancies, counts)
