from __future__ import annotations

import random

import pytest

from tmclab import graph as g
from tmclab.graph import Graph
from tmclab.solver import tmc_exact

ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f" -- {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def bowtie() -> Graph:
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """Random spanning tree plus independent extra edges."""
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    for i in range(1, n):
        a, b = order[i], order[rng.randrange(i)]
        edges.add((min(a, b), max(a, b)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
    return Graph(n, tuple(edges))


@pytest.fixture(scope="session")
def sweep6() -> list[Graph]:
    return [G for n in range(1, 7) for G in g.enumerate_connected_graphs(n)]


@pytest.fixture(scope="session")
def exact6(sweep6) -> dict[Graph, int]:
    return {G: tmc_exact(G).value for G in sweep6}
