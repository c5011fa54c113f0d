"""Shared brute-force oracles, written independently from the package code."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from netgoods.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def brute_independent(g: Graph, s) -> bool:
    s = set(s)
    return not any(i in s and j in s for i, j in g.edges)


def brute_mis(g: Graph) -> list[tuple[int, ...]]:
    """Maximal independent sets by scanning every subset."""
    out = []
    for r in range(g.n + 1):
        for s in itertools.combinations(range(g.n), r):
            if not brute_independent(g, s):
                continue
            if all(not brute_independent(g, s + (v,)) for v in range(g.n) if v not in s):
                out.append(s)
    return sorted(out)


def brute_scn(g: Graph, x):
    adj = [[] for _ in range(g.n)]
    for i, j in g.edges:
        adj[i].append(j)
        adj[j].append(i)
    return [x[i] + sum(x[j] for j in adj[i]) for i in range(g.n)]


def brute_is_equilibrium(g: Graph, x, e=Fraction(1)) -> bool:
    s = brute_scn(g, x)
    return all(v >= 0 for v in x) and all(si >= e and (xi == 0 or si == e) for xi, si in zip(x, s))


def grid_equilibria(g: Graph, steps: int, e=Fraction(1)):
    pts = [Fraction(k, steps) * e for k in range(steps + 1)]
    return {x for x in itertools.product(pts, repeat=g.n) if brute_is_equilibrium(g, x, e)}


@pytest.fixture
def P2():
    return Graph.from_edges(2, [(0, 1)])


@pytest.fixture
def P3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def P4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def C4():
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def K13():
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
