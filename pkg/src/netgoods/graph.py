"""Undirected simple graphs with the structural predicates used by the game."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input (self-loops, duplicate edges, bad labels)."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``edges`` holds each edge once as a sorted pair. ``labels`` keeps the
    original vertex names from ingestion and does not take part in equality.
    """

    n: int
    edges: frozenset = frozenset()
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError(f"edge {e} out of range for n={self.n}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))
        nbr = [0] * self.n
        for i, j in norm:
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
        object.__setattr__(self, "_nbr", tuple(nbr))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels=None) -> "Graph":
        """Build a graph, rejecting duplicate (including reversed) edges."""
        seen = set()
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        return cls(n, frozenset(seen), labels)

    # bitmask views; bit j of nbr_mask(i) is set iff j is adjacent to i
    def nbr_mask(self, i: int) -> int:
        return self._nbr[i]

    def closed_mask(self, i: int) -> int:
        return self._nbr[i] | (1 << i)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacency(self) -> list[list[int]]:
        return [[(self._nbr[i] >> j) & 1 for j in range(self.n)] for i in range(self.n)]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def mask_of(members: Iterable[int]) -> int:
    m = 0
    for i in members:
        m |= 1 << i
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def characteristic(n: int, members: Iterable[int]) -> tuple[int, ...]:
    s = set(members)
    if any(not 0 <= i < n for i in s):
        raise GraphError("node set member out of range")
    return tuple(1 if i in s else 0 for i in range(n))


def neighbors(g: Graph, i: int) -> tuple[int, ...]:
    return members_of(g.nbr_mask(i))


def degrees(g: Graph) -> tuple[int, ...]:
    return tuple(bin(g.nbr_mask(i)).count("1") for i in range(g.n))


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by smallest member."""
    return [members_of(c) for c in components_of_mask(g, g.full_mask)]


def components_of_mask(g: Graph, mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``, as bitmasks."""
    comps = []
    rest = mask
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            b = frontier & -frontier
            frontier ^= b
            new = g.nbr_mask(b.bit_length() - 1) & mask & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_forest(g: Graph) -> bool:
    parent = list(range(g.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in g.edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def is_regular(g: Graph) -> int | None:
    if g.n == 0:
        raise GraphError("regularity is undefined for the empty graph")
    d = degrees(g)
    return d[0] if all(x == d[0] for x in d) else None


def dependants_and_guardians(g: Graph) -> list[tuple[int, int, bool]]:
    """All ``(dependant, guardian, co_dependant)`` triples, sorted.

    A dependant has degree one; its guardian is its unique neighbour. The flag
    marks isolated links, where each endpoint is the other's dependant.
    """
    deg = degrees(g)
    out = []
    for i in range(g.n):
        if deg[i] == 1:
            j = neighbors(g, i)[0]
            out.append((i, j, deg[j] == 1))
    return out


def induced_subgraph(g: Graph, members: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by ``members``; returns it with the old-index map."""
    keep = tuple(sorted(set(members)))
    index = {v: k for k, v in enumerate(keep)}
    edges = [(index[i], index[j]) for i, j in g.edges if i in index and j in index]
    return Graph(len(keep), frozenset(edges)), keep


def is_independent(g: Graph, members: Iterable[int]) -> bool:
    m = mask_of(members)
    return all(not (g.nbr_mask(i) & m) for i in members_of(m))


def is_dominating(g: Graph, members: Iterable[int]) -> bool:
    m = mask_of(members)
    return all(g.closed_mask(i) & m for i in range(g.n))


def is_matching(g: Graph, edge_set: Iterable[Sequence[int]]) -> bool:
    used = 0
    for e in edge_set:
        i, j = e
        if (min(i, j), max(i, j)) not in g.edges:
            return False
        if used & ((1 << i) | (1 << j)):
            return False
        used |= (1 << i) | (1 << j)
    return True


def pendant_edges(g: Graph) -> list[tuple[int, int]]:
    deg = degrees(g)
    return sorted(e for e in g.edges if deg[e[0]] == 1 or deg[e[1]] == 1)


def is_well_covered_forest(g: Graph) -> bool:
    """True iff the pendant edges of ``g`` form a perfect matching.

    Only defined for forests without isolated vertices.
    """
    if not is_forest(g):
        raise GraphError("well-covered forest test requires a forest")
    if any(d == 0 for d in degrees(g)):
        raise GraphError("well-covered forest test requires no isolated vertices")
    pend = pendant_edges(g)
    return is_matching(g, pend) and 2 * len(pend) == g.n


# -- edge-list text format -------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    One edge per line as two whitespace-separated labels; ``#`` starts a
    comment line. An optional ``n <count>`` header fixes the vertex count, in
    which case labels must be integers ``0..count-1``. Without a header,
    integer labels are ordered numerically and other labels by first
    appearance, then remapped to ``0..n-1``.
    """
    n_header = None
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n" and len(parts) == 2 and n_header is None and not pairs:
            try:
                n_header = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad vertex count {parts[1]!r}") from None
            if n_header < 0:
                raise GraphError(f"line {lineno}: negative vertex count")
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two labels, got {line!r}")
        pairs.append((parts[0], parts[1]))

    if n_header is not None:
        try:
            edges = [(int(a), int(b)) for a, b in pairs]
        except ValueError:
            raise GraphError("labels must be integers when an 'n' header is given") from None
        for a, b in edges:
            if not (0 <= a < n_header and 0 <= b < n_header):
                raise GraphError(f"edge ({a}, {b}) out of range for n={n_header}")
        return Graph.from_edges(n_header, edges, tuple(str(i) for i in range(n_header)))

    order: list[str] = []
    seen = set()
    for a, b in pairs:
        for lab in (a, b):
            if lab not in seen:
                seen.add(lab)
                order.append(lab)
    if all(_is_int(lab) for lab in order):
        order.sort(key=int)
    index = {lab: k for k, lab in enumerate(order)}
    return Graph.from_edges(len(order), [(index[a], index[b]) for a, b in pairs], tuple(order))


def _is_int(s: str) -> bool:
    try:
        int(s)
    except ValueError:
        return False
    return True


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{i} {j}" for i, j in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


# -- small named graphs ----------------------------------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def cube_graph() -> Graph:
    edges = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return Graph(8, frozenset(edges))


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges += [(i + offset, j + offset) for i, j in h.edges]
        offset += h.n
    return Graph(offset, frozenset(edges))
