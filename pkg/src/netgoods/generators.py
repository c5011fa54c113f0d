"""Seeded random graph families used by the CLI and the verification suite."""

from __future__ import annotations

import numpy as np

from .graph import Graph, GraphError, connected_components, cube_graph, cycle_graph, is_forest, is_well_covered_forest

KINDS = ("gnp", "tree", "forest", "regular-cycle", "well-covered-forest", "connected", "cube")


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise ValueError("generators need an explicit seed")
    return np.random.default_rng(seed)


def gnp(n: int, p: float, seed) -> Graph:
    if n < 0 or not 0 <= p <= 1:
        raise ValueError("gnp needs n >= 0 and 0 <= p <= 1")
    rng = _rng(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(n, frozenset(edges))


def random_tree(n: int, seed) -> Graph:
    """Random recursive tree: vertex ``v`` attaches to a uniform earlier vertex."""
    if n < 1:
        raise ValueError("a tree needs at least one vertex")
    rng = _rng(seed)
    edges = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    return Graph(n, frozenset(edges))


def random_forest(n: int, seed, p_new: float = 0.25, min_tree: int = 1) -> Graph:
    """Recursive attachment where each vertex starts a new tree with probability ``p_new``.

    With ``min_tree = 2`` no component is a lone vertex.
    """
    if n < 0 or not 0 <= p_new <= 1:
        raise ValueError("forest needs n >= 0 and 0 <= p_new <= 1")
    if min_tree not in (1, 2):
        raise ValueError("min_tree must be 1 or 2")
    rng = _rng(seed)
    edges = []
    size_of_root = {}
    root = []
    for v in range(n):
        if v == 0 or rng.random() < p_new:
            root.append(v)
            size_of_root[v] = 1
            continue
        u = int(rng.integers(0, v))
        edges.append((u, v))
        root.append(root[u])
        size_of_root[root[u]] += 1
    if min_tree == 2:
        roots = sorted(size_of_root)
        for r in roots:
            if size_of_root[r] == 1:
                # join a lone vertex to a random other vertex
                others = [v for v in range(n) if v != r]
                if not others:
                    raise ValueError("cannot avoid a lone vertex with n = 1")
                u = int(others[int(rng.integers(0, len(others)))])
                edges.append((min(u, r), max(u, r)))
                ru = root[u]
                for v in range(n):
                    if root[v] == r:
                        root[v] = ru
                size_of_root[ru] = size_of_root.get(ru, 0) + 1
                size_of_root[r] = 0
    g = Graph(n, frozenset(edges))
    assert is_forest(g)
    return g


def random_connected(n: int, p: float, seed) -> Graph:
    """A random tree with every other pair joined independently with probability ``p``."""
    rng = _rng(seed)
    t = random_tree(n, rng)
    edges = set(t.edges)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < p:
                edges.add((i, j))
    return Graph(n, frozenset(edges))


def regular_cycle(n: int) -> Graph:
    return cycle_graph(n)


def well_covered_forest(m: int, seed, connected: bool = False) -> Graph:
    """Attach one pendant vertex to every vertex of a random forest on ``m`` vertices.

    Base components have at least two vertices (when ``m >= 2``), so no
    component of the result is an isolated link.
    """
    if m < 1:
        raise ValueError("need at least one guardian")
    rng = _rng(seed)
    if connected or m == 1:
        base = random_tree(m, rng)
    else:
        base = random_forest(m, rng, min_tree=2)
    edges = set(base.edges) | {(v, m + v) for v in range(m)}
    g = Graph(2 * m, frozenset(edges))
    assert is_well_covered_forest(g)
    return g


def generate(kind: str, seed, n: int | None = None, m: int | None = None, p: float | None = None) -> Graph:
    """Dispatch used by the CLI; validates the family predicate before returning."""
    if kind == "gnp":
        g = gnp(_need(n, "n"), 0.3 if p is None else p, seed)
    elif kind == "tree":
        g = random_tree(_need(n, "n"), seed)
        assert is_forest(g) and len(connected_components(g)) == 1
    elif kind == "forest":
        g = random_forest(_need(n, "n"), seed, 0.25 if p is None else p)
    elif kind == "connected":
        g = random_connected(_need(n, "n"), 0.2 if p is None else p, seed)
    elif kind == "regular-cycle":
        g = regular_cycle(_need(n, "n"))
    elif kind == "well-covered-forest":
        g = well_covered_forest(_need(m, "m"), seed)
    elif kind == "cube":
        g = cube_graph()
    else:
        raise ValueError(f"unknown graph kind {kind!r}; choose from {', '.join(KINDS)}")
    return g


def _need(v, name):
    if v is None:
        raise ValueError(f"parameter {name} is required for this graph kind")
    return v


__all__ = [
    "GraphError",
    "KINDS",
    "generate",
    "gnp",
    "random_connected",
    "random_forest",
    "random_tree",
    "regular_cycle",
    "well_covered_forest",
]
