"""Nash equilibria of the network public goods game as a union of polytopes.

A profile ``x`` is an equilibrium iff ``x / e*`` solves the complementarity
system ``x >= 0, (A + I) x >= 1, x . ((A + I) x - 1) = 0``. Fixing which agents
may exert effort (the support ``S``) turns that system into the polytope

    x_i = 0 (i not in S),  x_S >= 0,
    (A + I)_{S,S} x_S = e*,  sum_{j in N_i and S} x_j >= e* (i not in S),

so the equilibrium set is the union of these pieces over dominating supports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .exact import ONE, ZERO, enumerate_vertices, fraction_str, rank, solve_affine, to_fraction
from .graph import Graph, components_of_mask, is_dominating, is_independent, mask_of, members_of
from .indsets import enumerate_maximal_independent_sets

DEFAULT_N_MAX = 16

Profile = tuple  # tuple of Fractions, one per agent


class SizeLimitError(ValueError):
    """The graph is larger than the configured enumeration bound."""


def as_profile(x: Iterable, n: int | None = None) -> Profile:
    prof = tuple(to_fraction(v) for v in x)
    if n is not None and len(prof) != n:
        raise ValueError(f"profile has {len(prof)} entries, graph has {n} agents")
    return prof


def closed_effort(g: Graph, x: Sequence[Fraction]) -> list[Fraction]:
    out = []
    for i in range(g.n):
        s = x[i]
        m = g.nbr_mask(i)
        while m:
            b = m & -m
            m ^= b
            s += x[b.bit_length() - 1]
        out.append(s)
    return out


@dataclass(frozen=True)
class EquilibriumCheck:
    ok: bool
    violations: tuple  # (agent, reason) pairs

    def __bool__(self) -> bool:
        return self.ok


def check_equilibrium(g: Graph, x: Iterable, e_star=1) -> EquilibriumCheck:
    """Exact test of the equilibrium conditions, agent by agent.

    Agent ``i`` is fine iff ``x_i = 0`` with ``scn_i >= e*``, or
    ``scn_i = e*`` with ``x_i >= 0``.
    """
    e = to_fraction(e_star)
    prof = as_profile(x, g.n)
    scn = closed_effort(g, prof)
    bad = []
    for i in range(g.n):
        if prof[i] < 0:
            bad.append((i, "negative effort"))
        elif scn[i] < e:
            bad.append((i, f"neighbourhood effort {fraction_str(scn[i])} below e*"))
        elif prof[i] > 0 and scn[i] != e:
            bad.append((i, "positive effort while neighbourhood effort exceeds e*"))
    return EquilibriumCheck(not bad, tuple(bad))


def is_equilibrium(g: Graph, x: Iterable, e_star=1) -> bool:
    return check_equilibrium(g, x, e_star).ok


@dataclass(frozen=True)
class EquilibriumPiece:
    """One polytope of equilibria sharing a support pattern.

    Points are ``base + sum_f t_f * directions[f]`` where ``t_f`` is the value
    of coordinate ``free[f]`` (directions are the reduced-echelon nullspace
    basis of the tight system), subject to ``inequalities`` (rows
    ``(coeffs, rhs)`` read as ``coeffs . x >= rhs``).
    """

    n: int
    e_star: Fraction
    support: tuple
    base: tuple
    free: tuple
    directions: tuple
    vertices: tuple

    @property
    def support_mask(self) -> int:
        return mask_of(self.support)

    @property
    def param_dim(self) -> int:
        return len(self.free)

    @property
    def dimension(self) -> int:
        if len(self.vertices) <= 1:
            return 0
        v0 = self.vertices[0]
        return rank([[a - b for a, b in zip(v, v0)] for v in self.vertices[1:]])

    def point(self, t: Sequence) -> Profile:
        x = list(self.base)
        for tf, d in zip(t, self.directions):
            tf = to_fraction(tf)
            if tf:
                for i in self.support:
                    if d[i]:
                        x[i] += tf * d[i]
        return tuple(x)

    def tight_rows(self, g: Graph) -> list[tuple[tuple, Fraction]]:
        s = self.support_mask
        rows = []
        for i in self.support:
            m = g.closed_mask(i) & s
            rows.append((tuple(ONE if (m >> j) & 1 else ZERO for j in range(self.n)), self.e_star))
        return rows

    def inequalities(self, g: Graph) -> list[tuple[tuple, Fraction]]:
        s = self.support_mask
        rows = []
        for i in range(self.n):
            if (s >> i) & 1:
                rows.append((tuple(ONE if j == i else ZERO for j in range(self.n)), ZERO))
            else:
                m = g.nbr_mask(i) & s
                rows.append(
                    (tuple(ONE if (m >> j) & 1 else ZERO for j in range(self.n)), self.e_star)
                )
        return rows

    def contains(self, g: Graph, x: Iterable) -> bool:
        """Membership through the parametrization, then the inequality rows."""
        prof = as_profile(x, self.n)
        s = self.support_mask
        if any(prof[i] for i in range(self.n) if not (s >> i) & 1):
            return False
        if self.point([prof[f] for f in self.free]) != prof:
            return False
        return all(
            sum((c * v for c, v in zip(coeffs, prof) if c), ZERO) >= rhs
            for coeffs, rhs in self.inequalities(g)
        )

    def centroid(self) -> Profile:
        k = len(self.vertices)
        return tuple(sum((v[i] for v in self.vertices), ZERO) / k for i in range(self.n))

    def is_strictly_positive_somewhere(self) -> bool:
        return all(c > 0 for c in self.centroid())

    def to_json(self, g: Graph | None = None) -> dict:
        out = {
            "support": list(self.support),
            "e_star": fraction_str(self.e_star),
            "dimension": self.dimension,
            "base": [fraction_str(v) for v in self.base],
            "free": list(self.free),
            "directions": [[fraction_str(v) for v in d] for d in self.directions],
            "vertices": [[fraction_str(v) for v in p] for p in self.vertices],
        }
        if g is not None:
            out["equalities"] = [
                {"coeffs": [fraction_str(c) for c in row], "rhs": fraction_str(r)}
                for row, r in self.tight_rows(g)
            ]
            out["inequalities"] = [
                {"coeffs": [fraction_str(c) for c in row], "rhs": fraction_str(r)}
                for row, r in self.inequalities(g)
            ]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "EquilibriumPiece":
        vertices = tuple(tuple(Fraction(v) for v in p) for p in data["vertices"])
        base = tuple(Fraction(v) for v in data["base"])
        return cls(
            n=len(base),
            e_star=Fraction(data["e_star"]),
            support=tuple(data["support"]),
            base=base,
            free=tuple(data["free"]),
            directions=tuple(tuple(Fraction(v) for v in d) for d in data["directions"]),
            vertices=vertices,
        )


@dataclass(frozen=True)
class EquilibriumSet:
    graph: Graph
    e_star: Fraction
    pieces: tuple

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def contains(self, x: Iterable) -> bool:
        return any(p.contains(self.graph, x) for p in self.pieces)

    def distributed(self) -> EquilibriumPiece | None:
        full = tuple(range(self.graph.n))
        for p in self.pieces:
            if p.support == full and self.graph.n and p.is_strictly_positive_somewhere():
                return p
        return None

    def vertices(self) -> list[Profile]:
        return sorted({v for p in self.pieces for v in p.vertices})

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "e_star": fraction_str(self.e_star),
            "pieces": [p.to_json(self.graph) for p in self.pieces],
        }


# -- enumeration -----------------------------------------------------------

def enumerate_pieces(g: Graph, e_star=1, n_max: int = DEFAULT_N_MAX) -> EquilibriumSet:
    """All maximal equilibrium pieces of ``g``, sorted by support.

    Pieces whose polytope lies inside another piece are dropped, so every
    kept piece has a relative-interior point with support exactly its own.
    """
    e = to_fraction(e_star)
    if e <= 0:
        raise ValueError("e* must be positive")
    if g.n > n_max:
        raise SizeLimitError(f"graph has {g.n} vertices, enumeration bound is {n_max}")
    pieces = []
    for support, base, free, dirs, verts in _normalized_pieces(g):
        pieces.append(
            EquilibriumPiece(
                n=g.n,
                e_star=e,
                support=support,
                base=tuple(e * v for v in base),
                free=free,
                directions=dirs,
                vertices=tuple(tuple(e * v for v in p) for p in verts),
            )
        )
    return EquilibriumSet(g, e, tuple(pieces))


@lru_cache(maxsize=512)
def _normalized_pieces(g: Graph):
    n = g.n
    if n == 0:
        return (((), (), (), (), ((),)),)
    closed = [g.closed_mask(i) for i in range(n)]
    nbr = [g.nbr_mask(i) for i in range(n)]
    comp_cache: dict[int, tuple | None] = {}

    def component(cmask: int):
        if cmask in comp_cache:
            return comp_cache[cmask]
        verts = members_of(cmask)
        mat = [[ONE if (closed[i] >> j) & 1 else ZERO for j in verts] for i in verts]
        sol = solve_affine(mat, [ONE] * len(verts))
        res = None
        if sol is not None:
            part, basis, free_local = sol
            G = [[b[r] for b in basis] for r in range(len(verts))]
            h = [-part[r] for r in range(len(verts))]
            vs = enumerate_vertices(G, h) if basis else ([()] if all(p >= 0 for p in part) else [])
            positive = [False] * len(verts)
            for t in vs:
                for r in range(len(verts)):
                    if part[r] + sum((tf * b[r] for tf, b in zip(t, basis)), ZERO) > 0:
                        positive[r] = True
            if vs and all(positive):
                base = {verts[r]: part[r] for r in range(len(verts))}
                dirs = [
                    (verts[f], {verts[r]: b[r] for r in range(len(verts)) if b[r]})
                    for f, b in zip(free_local, basis)
                ]
                res = (base, dirs)
        comp_cache[cmask] = res
        return res

    proper: dict[int, tuple] = {}
    for smask in range(1, 1 << n):
        if any(not (c & smask) for c in closed):
            continue
        base = [ZERO] * n
        dirs: list[tuple[int, dict]] = []
        ok = True
        for cmask in components_of_mask(g, smask):
            comp = component(cmask)
            if comp is None:
                ok = False
                break
            for v, val in comp[0].items():
                base[v] = val
            dirs.extend(comp[1])
        if not ok:
            continue
        dirs.sort(key=lambda d: d[0])
        free = tuple(f for f, _ in dirs)
        k = len(free)
        G: list[list[Fraction]] = []
        h: list[Fraction] = []
        feasible = True
        for i in range(n):
            if (smask >> i) & 1:
                row = [d.get(i, ZERO) for _, d in dirs]
                rhs = -base[i]
            else:
                m = nbr[i] & smask
                js = members_of(m)
                row = [sum((d.get(j, ZERO) for j in js), ZERO) for _, d in dirs]
                rhs = ONE - sum((base[j] for j in js), ZERO)
            if any(row):
                G.append(row)
                h.append(rhs)
            elif rhs > 0:
                feasible = False
                break
        if not feasible:
            continue
        if k == 0:
            tverts = [()]
        else:
            tverts = enumerate_vertices(G, h)
        if not tverts:
            continue
        xverts = []
        eff = 0
        for t in tverts:
            x = base[:]
            for tf, (_, d) in zip(t, dirs):
                if tf:
                    for j, val in d.items():
                        x[j] += tf * val
            xverts.append(tuple(x))
            eff |= mask_of(i for i in range(n) if x[i])
        if eff != smask:
            continue
        dvecs = tuple(tuple(d.get(j, ZERO) for j in range(n)) for _, d in dirs)
        proper[smask] = (tuple(base), free, dvecs, tuple(sorted(xverts)))

    # drop pieces contained in a piece with a larger support
    kept = []
    for smask, (base, free, dvecs, xverts) in proper.items():
        tight_out = 0
        for i in range(n):
            if (smask >> i) & 1:
                continue
            js = members_of(nbr[i] & smask)
            if all(sum((v[j] for j in js), ZERO) == 1 for v in xverts):
                tight_out |= 1 << i
        if _has_superpiece(smask, tight_out, proper):
            continue
        kept.append((members_of(smask), base, free, dvecs, xverts))
    kept.sort(key=lambda p: p[0])
    return tuple(kept)


def _has_superpiece(smask: int, tight_out: int, proper: dict) -> bool:
    if not tight_out:
        return False
    if bin(tight_out).count("1") <= 12:
        sub = tight_out
        while sub:
            if (smask | sub) in proper:
                return True
            sub = (sub - 1) & tight_out
        return False
    allowed = smask | tight_out
    return any(b != smask and b & smask == smask and b & ~allowed == 0 for b in proper)


# -- specialized and distributed equilibria --------------------------------

def specialized_from_mis(g: Graph, members: Iterable[int], e_star=1) -> Profile:
    mem = sorted(set(members))
    if not (is_independent(g, mem) and is_dominating(g, mem)):
        raise ValueError(f"{mem} is not a maximal independent set")
    e = to_fraction(e_star)
    s = set(mem)
    return tuple(e if i in s else ZERO for i in range(g.n))


def enumerate_specialized(g: Graph, e_star=1) -> list[Profile]:
    return [specialized_from_mis(g, s, e_star) for s in enumerate_maximal_independent_sets(g)]


def distributed_piece(g: Graph, e_star=1, n_max: int = DEFAULT_N_MAX) -> EquilibriumPiece | None:
    return enumerate_pieces(g, e_star, n_max).distributed()


def sample_piece(piece: EquilibriumPiece, k: int, seed: int) -> list[Profile]:
    """``k`` exact points of the piece as random positive vertex combinations.

    Every vertex gets a positive weight, so samples lie in the relative
    interior; a zero-dimensional piece yields its point ``k`` times.
    """
    if not piece.vertices:
        raise ValueError("cannot sample an empty piece")
    if k < 0:
        raise ValueError("sample count must be nonnegative")
    rng = np.random.default_rng(seed)
    verts = piece.vertices
    out = []
    for _ in range(k):
        if len(verts) == 1:
            out.append(verts[0])
            continue
        w = [Fraction(int(a)) for a in rng.integers(1, 1000, size=len(verts))]
        tot = sum(w, ZERO)
        out.append(
            tuple(sum((wi * v[i] for wi, v in zip(w, verts)), ZERO) / tot for i in range(piece.n))
        )
    return out
