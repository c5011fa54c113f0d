"""Exact independent-set quantities: maximal sets, alpha, alpha_w, beta."""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import to_fraction
from .graph import Graph, degrees, members_of


def enumerate_maximal_independent_sets(g: Graph) -> list[tuple[int, ...]]:
    """Every maximal independent set of ``g``, as sorted tuples in lexicographic order."""
    return list(_maximal_sets(g))


@lru_cache(maxsize=256)
def _maximal_sets(g: Graph) -> tuple[tuple[int, ...], ...]:
    deg = degrees(g)
    found: list[tuple[int, ...]] = []

    def branch(chosen: int, cand: int, excluded: int, covered: int) -> None:
        # an excluded vertex must end up with a chosen neighbour
        pending = excluded & ~covered
        while pending:
            b = pending & -pending
            pending ^= b
            if not (g.nbr_mask(b.bit_length() - 1) & cand):
                return
        if not cand:
            found.append(members_of(chosen))
            return
        # branch on the candidate of highest degree (lowest index on ties)
        best, best_deg = -1, -1
        c = cand
        while c:
            b = c & -c
            c ^= b
            v = b.bit_length() - 1
            if deg[v] > best_deg:
                best, best_deg = v, deg[v]
        vb = 1 << best
        nb = g.nbr_mask(best)
        branch(chosen | vb, cand & ~(nb | vb), excluded, covered | nb)
        branch(chosen, cand & ~vb, excluded | vb, covered)

    branch(0, g.full_mask, 0, 0)
    return tuple(sorted(found))


def independence_number(g: Graph) -> int:
    return max((len(s) for s in _maximal_sets(g)), default=0)


def independent_domination_number(g: Graph) -> int:
    return min((len(s) for s in _maximal_sets(g)), default=0)


def smallest_maximal_independent_set(g: Graph) -> tuple[int, ...]:
    """A maximal independent set of size beta(G), lexicographically first among ties."""
    return min(_maximal_sets(g), key=lambda s: (len(s), s))


def max_weight_independent_set(g: Graph, w: Sequence) -> tuple[tuple[int, ...], Fraction]:
    """Maximum-weight independent set and its weight alpha_w(G).

    Weights must be nonnegative, so a maximum is always attained by a
    maximal set; among maximal sets of equal weight the lexicographically
    smallest member list wins.
    """
    weights = check_weights(g, w)
    best: tuple[int, ...] | None = None
    best_w = Fraction(-1)
    for s in _maximal_sets(g):
        ws = sum((weights[i] for i in s), Fraction(0))
        if ws > best_w:
            best, best_w = s, ws
    if best is None:
        return (), Fraction(0)
    return best, best_w


def count_max_weight_ties(g: Graph, w: Sequence) -> int:
    weights = check_weights(g, w)
    totals = [sum((weights[i] for i in s), Fraction(0)) for s in _maximal_sets(g)]
    return totals.count(max(totals)) if totals else 0


def is_well_covered(g: Graph) -> bool:
    return independence_number(g) == independent_domination_number(g)


def check_weights(g: Graph, w: Sequence) -> tuple[Fraction, ...]:
    if len(w) != g.n:
        raise ValueError(f"weight vector has length {len(w)}, expected {g.n}")
    weights = tuple(to_fraction(x) for x in w)
    if any(x < 0 for x in weights):
        raise ValueError("weights must be nonnegative")
    return weights


def degree_weights(g: Graph) -> tuple[Fraction, ...]:
    return tuple(Fraction(d) for d in degrees(g))


def unit_weights(g: Graph) -> tuple[Fraction, ...]:
    return (Fraction(1),) * g.n


def load_weights(path: str, g: Graph) -> tuple[Fraction, ...]:
    """Read a JSON object mapping vertex label to a rational string such as ``"3/2"``.

    Vertices missing from the file get weight zero.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("weight file must hold a JSON object")
    labels = g.labels if g.labels is not None else tuple(str(i) for i in range(g.n))
    index = {lab: k for k, lab in enumerate(labels)}
    w = [Fraction(0)] * g.n
    for lab, val in raw.items():
        if lab not in index:
            raise ValueError(f"weight given for unknown vertex {lab!r}")
        w[index[lab]] = to_fraction(val)
    return check_weights(g, w)
