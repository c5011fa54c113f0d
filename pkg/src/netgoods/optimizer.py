"""Extremal equilibria: linear objectives exactly, welfare by Frank-Wolfe.

Linear objectives over an equilibrium piece peak at a vertex, so they are
evaluated on the exact vertex lists. Welfare is concave on each piece and is
maximized with pairwise Frank-Wolfe over the same vertex lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .benefit import BenefitFunction, sigma_vectors
from .equilibria import EquilibriumPiece, EquilibriumSet
from .exact import ZERO, fraction_str, to_fraction
from .graph import Graph, degrees, is_forest, is_well_covered_forest, members_of
from .indsets import (
    count_max_weight_ties,
    degree_weights,
    enumerate_maximal_independent_sets,
    independent_domination_number,
    max_weight_independent_set,
    smallest_maximal_independent_set,
)
from .metrics import welfare, welfare_gain

FW_TOL = 1e-9
FW_MAX_ITER = 10_000


def _vec(values: Sequence) -> list[Fraction]:
    return [to_fraction(v) for v in values]


@dataclass(frozen=True)
class LinearOptimum:
    value: Fraction
    witness: tuple
    support: tuple
    ties: int  # optimal vertices across all pieces, counted once each


def max_linear(es: EquilibriumSet, mu: Sequence) -> LinearOptimum:
    """Exact ``max mu.x`` over the equilibrium set.

    Ties go to the piece with the smallest support, then its smallest vertex.
    """
    if not es.pieces:
        raise ValueError("empty equilibrium set")
    m = _vec(mu)
    if len(m) != es.graph.n:
        raise ValueError("objective length differs from agent count")
    best_val = None
    best = None
    optimal = set()
    for p in es.pieces:
        for v in p.vertices:
            val = sum((a * b for a, b in zip(m, v) if a and b), ZERO)
            if best_val is None or val > best_val:
                best_val, best = val, (v, p.support)
                optimal = {v}
            elif val == best_val:
                optimal.add(v)
    return LinearOptimum(best_val, best[0], best[1], len(optimal))


def min_cost(es: EquilibriumSet, c=1) -> LinearOptimum:
    """``C* = c * min e.x`` with its witness."""
    opt = max_linear(es, [-1] * es.graph.n)
    return LinearOptimum(-to_fraction(c) * opt.value, opt.witness, opt.support, opt.ties)


def max_cost(es: EquilibriumSet, c=1) -> LinearOptimum:
    opt = max_linear(es, [1] * es.graph.n)
    return LinearOptimum(to_fraction(c) * opt.value, opt.witness, opt.support, opt.ties)


def max_weighted_effort(es: EquilibriumSet, w: Sequence) -> LinearOptimum:
    if any(to_fraction(v) < 0 for v in w):
        raise ValueError("weights must be nonnegative")
    return max_linear(es, w)


@dataclass(frozen=True)
class SpecializedExtrema:
    welfare: float
    welfare_witness: tuple
    effort: Fraction
    effort_witness: tuple
    effort_ties: int
    cost: Fraction
    cost_witness: tuple


def specialized_extrema(g: Graph, e_star, bf: BenefitFunction, w: Sequence) -> SpecializedExtrema:
    """Welfare, weighted effort and cost optimized over specialized equilibria."""
    e = to_fraction(e_star)
    sets = enumerate_maximal_independent_sets(g)
    profiles = [tuple(e if i in set(s) else ZERO for i in range(g.n)) for s in sets]
    best = profiles[0]
    for p in profiles[1:]:
        if welfare_gain(bf, g, p, best) > 0:
            best = p
    wset, wval = max_weight_independent_set(g, w)
    beta_set = smallest_maximal_independent_set(g)
    as_profile_of = lambda s: tuple(e if i in set(s) else ZERO for i in range(g.n))  # noqa: E731
    return SpecializedExtrema(
        welfare=welfare(bf, g, best),
        welfare_witness=best,
        effort=e * wval,
        effort_witness=as_profile_of(wset),
        effort_ties=count_max_weight_ties(g, w),
        cost=bf.c * e * len(beta_set),
        cost_witness=as_profile_of(beta_set),
    )


# -- welfare over a piece --------------------------------------------------

@dataclass(frozen=True)
class PieceWelfare:
    support: tuple
    value: float
    witness: tuple
    gap: float
    iterations: int
    converged: bool
    at_vertex: bool


class _PieceObjective:
    """Welfare restricted to one piece, where supporting agents sit at e*."""

    def __init__(self, g: Graph, bf: BenefitFunction, piece: EquilibriumPiece):
        self.bf = bf
        n = g.n
        smask = piece.support_mask
        self.n_tight = len(piece.support)
        outside = [i for i in range(n) if not (smask >> i) & 1]
        self.cover = np.zeros((len(outside), n))
        for r, i in enumerate(outside):
            for j in members_of(g.nbr_mask(i) & smask):
                self.cover[r, j] = 1.0
        self.k = bf.k
        self.c = float(bf.c)
        self.e = float(bf.e_star)
        self.b0 = float(bf.b0)

    def value(self, x: np.ndarray) -> float:
        y = self.cover @ x - self.e
        ben = self.b0 + self.c / self.k * -np.expm1(-self.k * y)
        return self.n_tight * self.b0 + math.fsum(ben) - self.c * math.fsum(x)

    def grad(self, x: np.ndarray) -> np.ndarray:
        y = self.cover @ x - self.e
        return self.cover.T @ (self.c * np.exp(-self.k * y)) - self.c


def _best_vertex(bf: BenefitFunction, g: Graph, verts: Sequence[tuple]) -> int:
    best = 0
    for q in range(1, len(verts)):
        if welfare_gain(bf, g, verts[q], verts[best]) > 0:
            best = q
    return best


def piece_max_welfare(
    g: Graph, bf: BenefitFunction, piece: EquilibriumPiece, tol: float = FW_TOL, max_iter: int = FW_MAX_ITER
) -> PieceWelfare:
    verts = piece.vertices
    if len(verts) == 1:
        return PieceWelfare(piece.support, welfare(bf, g, verts[0]), verts[0], 0.0, 0, True, True)
    obj = _PieceObjective(g, bf, piece)
    V = np.array([[float(v) for v in p] for p in verts])
    alpha = np.zeros(len(verts))
    start = _best_vertex(bf, g, verts)
    alpha[start] = 1.0
    gap = math.inf
    it = 0
    while it < max_iter:
        x = alpha @ V
        gr = obj.grad(x)
        scores = V @ gr
        s = int(np.argmax(scores))
        gap = float(scores[s] - gr @ x)
        if gap <= tol:
            break
        active = np.flatnonzero(alpha > 0)
        a = int(active[np.argmin(scores[active])])
        d = V[s] - V[a]
        gmax = alpha[a]
        if obj.grad(x + gmax * d) @ d >= 0:
            step = gmax
        else:
            lo, hi = 0.0, gmax
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if obj.grad(x + mid * d) @ d > 0:
                    lo = mid
                else:
                    hi = mid
            step = 0.5 * (lo + hi)
        alpha[s] += step
        alpha[a] -= step
        if step == gmax:
            alpha[a] = 0.0
        it += 1
    converged = gap <= tol

    # prefer an exact vertex when one is optimal to within the tolerance
    candidates = []
    for q in np.flatnonzero(alpha > 0):
        gq = obj.grad(V[q])
        vgap = float(np.max(V @ gq) - gq @ V[q])
        if vgap <= tol:
            candidates.append((int(q), vgap))
    if candidates:
        q, vgap = candidates[0]
        for q2, g2 in candidates[1:]:
            if welfare_gain(bf, g, verts[q2], verts[q]) > 0:
                q, vgap = q2, g2
        return PieceWelfare(piece.support, welfare(bf, g, verts[q]), verts[q], vgap, it, True, True)

    weights = [Fraction(float(a)) for a in alpha]
    tot = sum(weights, ZERO)
    witness = tuple(
        sum((wq * verts[q][i] for q, wq in enumerate(weights) if wq), ZERO) / tot for i in range(g.n)
    )
    return PieceWelfare(piece.support, welfare(bf, g, witness), witness, gap, it, converged, False)


@dataclass(frozen=True)
class WelfareOptimum:
    value: float
    witness: tuple
    support: tuple
    gap: float
    converged: bool
    pieces: tuple = field(repr=False)


def max_welfare(es: EquilibriumSet, bf: BenefitFunction, tol: float = FW_TOL, max_iter: int = FW_MAX_ITER) -> WelfareOptimum:
    """Maximum equilibrium welfare over all pieces, with per-piece results.

    Pieces that fail to reach the gap tolerance are reported through
    ``converged`` rather than dropped.
    """
    g = es.graph
    if not es.pieces:
        raise ValueError("empty equilibrium set")
    results = [piece_max_welfare(g, bf, p, tol, max_iter) for p in es.pieces]
    best = results[0]
    for r in results[1:]:
        if welfare_gain(bf, g, r.witness, best.witness) > 0:
            best = r
    return WelfareOptimum(
        value=best.value,
        witness=best.witness,
        support=best.support,
        gap=max(r.gap for r in results),
        converged=all(r.converged for r in results),
        pieces=tuple(results),
    )


# -- distributed equilibria ------------------------------------------------

@dataclass(frozen=True)
class DistributedExtrema:
    welfare_inf: Fraction
    welfare_witness: tuple
    welfare_closure_witness: bool
    cost_min: Fraction
    cost_witness: tuple
    cost_closure_witness: bool


def _face_centroid(piece: EquilibriumPiece, sign: int) -> tuple:
    totals = [sum(v, ZERO) for v in piece.vertices]
    target = max(totals) if sign > 0 else min(totals)
    face = [v for v, t in zip(piece.vertices, totals) if t == target]
    return tuple(sum((v[i] for v in face), ZERO) / len(face) for i in range(piece.n))


def distributed_extrema(es: EquilibriumSet, bf: BenefitFunction) -> DistributedExtrema | None:
    """Infimum welfare and minimum cost over distributed equilibria.

    Every agent is tight on the full-support piece, so welfare there is
    ``n b(e*) - c e.x``: the welfare infimum sits at maximum total effort and
    the cost minimum at minimum total effort. Witnesses are centroids of the
    optimal faces; one touching zero is flagged as a closure witness, since
    distributed equilibria need every effort strictly positive.
    """
    piece = es.distributed()
    if piece is None:
        return None
    n = es.graph.n
    hi = _face_centroid(piece, +1)
    lo = _face_centroid(piece, -1)
    return DistributedExtrema(
        welfare_inf=n * bf.b0 - bf.c * sum(hi, ZERO),
        welfare_witness=hi,
        welfare_closure_witness=any(v == 0 for v in hi),
        cost_min=bf.c * sum(lo, ZERO),
        cost_witness=lo,
        cost_closure_witness=any(v == 0 for v in lo),
    )


# -- linear welfare bounds -------------------------------------------------

@dataclass(frozen=True)
class WelfareBounds:
    lower: float
    upper: float
    value: float

    def holds(self, slack: float = 1e-9) -> bool:
        return self.value - self.lower >= -slack and self.upper - self.value >= -slack


def _bound_offsets(bf: BenefitFunction, g: Graph):
    sv = sigma_vectors(bf, g)
    c, e = float(bf.c), float(bf.e_star)
    base = g.n * float(bf.b0) - c * e * math.fsum(sv.sigma)
    spread = c * e * math.fsum(d * (s - sp) for d, s, sp in zip(degrees(g), sv.sigma, sv.sigma_prime))
    return sv, base, spread


def welfare_bounds(bf: BenefitFunction, g: Graph, x: Sequence, check: bool = True) -> WelfareBounds:
    """Linear lower and upper bounds on the welfare of an equilibrium.

    ``c l.x + n b(e*) - c e* e.sigma <= W_U(x) <= c u.x + n b(e*) - c e* e.sigma + c e* d.(sigma - sigma')``.
    """
    sv, base, spread = _bound_offsets(bf, g)
    xf = [float(to_fraction(v)) for v in x]
    c = float(bf.c)
    lower = c * math.fsum(a * b for a, b in zip(sv.l, xf)) + base
    upper = c * math.fsum(a * b for a, b in zip(sv.u, xf)) + base + spread
    out = WelfareBounds(lower, upper, welfare(bf, g, x))
    if check and not out.holds():
        raise AssertionError(f"welfare {out.value} outside [{lower}, {upper}]")
    return out


def optimum_bounds(es: EquilibriumSet, bf: BenefitFunction) -> dict:
    """Bounds on the best equilibrium and best specialized welfare from linear maxima."""
    g = es.graph
    sv, base, spread = _bound_offsets(bf, g)
    c = float(bf.c)
    theta_l = float(max_linear(es, sv.l).value)
    theta_u = float(max_linear(es, sv.u).value)
    sets = enumerate_maximal_independent_sets(g)
    e = float(bf.e_star)
    # the specialized maxima already carry the factor e* through x = e* 1_S
    ts_l = max(e * math.fsum(sv.l[i] for i in s) for s in sets)
    ts_u = max(e * math.fsum(sv.u[i] for i in s) for s in sets)
    return {
        "W_U_star": (c * theta_l + base, c * theta_u + base + spread),
        "W_U_S_star": (c * ts_l + base, c * ts_u + base + spread),
    }


@dataclass(frozen=True)
class LimitTargets:
    sigma_to_one: Fraction
    sigma_to_zero: Fraction | None


def limit_targets(g: Graph, bf: BenefitFunction, require_low: bool = False) -> LimitTargets:
    """Closed-form welfare limits as the concavity tends to one and to zero.

    The first is ``n (b(e*) - c e*) + c e* alpha_d``; the second,
    ``n b(e*) - c e* beta``, is only established for forests.
    """
    if any(d == 0 for d in degrees(g)):
        raise ValueError("welfare limits assume no isolated vertices")
    e, c = bf.e_star, bf.c
    _, alpha_d = max_weight_independent_set(g, degree_weights(g))
    high = g.n * (bf.b0 - c * e) + c * e * alpha_d
    low = None
    if is_forest(g):
        low = g.n * bf.b0 - c * e * independent_domination_number(g)
    elif require_low:
        raise ValueError("the small-concavity limit is only available on forests")
    return LimitTargets(high, low)


# -- full report -----------------------------------------------------------

@dataclass(frozen=True)
class ExtremalReport:
    graph: Graph
    bf: BenefitFunction
    weights: tuple
    W_U_star: WelfareOptimum
    W_U_S_star: float
    W_U_D_star: Fraction | None
    E_w_star: LinearOptimum
    E_w_S_star: Fraction
    C_star: LinearOptimum
    C_S_star: Fraction
    C_D_star: Fraction | None
    specialized: SpecializedExtrema
    distributed: DistributedExtrema | None
    bounds: dict | None
    limits: LimitTargets | None
    uniform_cost: Fraction | None  # set when every equilibrium has the same cost
    well_covered_forest: bool = False

    def to_json(self) -> dict:
        fs = fraction_str
        prof = lambda x: [fs(v) for v in x]  # noqa: E731
        g = self.graph
        out = {
            "n": g.n,
            "benefit": self.bf.to_json(),
            "weights": prof(self.weights),
            "W_U_star": {
                "value": self.W_U_star.value,
                "witness": prof(self.W_U_star.witness),
                "support": list(self.W_U_star.support),
                "gap": self.W_U_star.gap,
                "tolerance": FW_TOL,
                "converged": self.W_U_star.converged,
                "pieces_not_converged": [list(r.support) for r in self.W_U_star.pieces if not r.converged],
            },
            "W_U_S_star": {"value": self.W_U_S_star, "witness": prof(self.specialized.welfare_witness)},
            "E_w_star": {"value": fs(self.E_w_star.value), "witness": prof(self.E_w_star.witness)},
            "E_w_S_star": {
                "value": fs(self.E_w_S_star),
                "witness": prof(self.specialized.effort_witness),
                "max_weight_set_ties": self.specialized.effort_ties,
            },
            "C_star": {"value": fs(self.C_star.value), "witness": prof(self.C_star.witness)},
            "C_S_star": {"value": fs(self.C_S_star), "witness": prof(self.specialized.cost_witness)},
        }
        d = self.distributed
        if d is None:
            out["W_U_D_star"] = None
            out["C_D_star"] = None
        else:
            out["W_U_D_star"] = {
                "value": fs(d.welfare_inf),
                "decimal": float(d.welfare_inf),
                "witness": prof(d.welfare_witness),
                "closure_witness": d.welfare_closure_witness,
            }
            out["C_D_star"] = {
                "value": fs(d.cost_min),
                "witness": prof(d.cost_witness),
                "closure_witness": d.cost_closure_witness,
            }
        if self.bounds is not None:
            out["bounds"] = {k: {"lower": lo, "upper": hi} for k, (lo, hi) in self.bounds.items()}
        if self.limits is not None:
            out["limits"] = {
                "sigma_to_one": fs(self.limits.sigma_to_one),
                "sigma_to_zero": None if self.limits.sigma_to_zero is None else fs(self.limits.sigma_to_zero),
            }
        out["all_equilibria_same_cost"] = None if self.uniform_cost is None else fs(self.uniform_cost)
        out["well_covered_forest"] = self.well_covered_forest
        if self.well_covered_forest:
            half = self.bf.c * self.bf.e_star * Fraction(g.n, 2)
            out["cost_equals_half_c_e_n"] = self.uniform_cost == half
        return out


def analyze(es: EquilibriumSet, bf: BenefitFunction, w: Sequence | None = None) -> ExtremalReport:
    g = es.graph
    e = es.e_star
    if e != bf.e_star:
        raise ValueError("benefit function and equilibrium set use different e*")
    weights = tuple(_vec(w)) if w is not None else degree_weights(g)
    wopt = max_welfare(es, bf)
    sp = specialized_extrema(g, e, bf, weights)
    dist = distributed_extrema(es, bf)
    eopt = max_weighted_effort(es, weights)
    copt = min_cost(es, bf.c)
    isolated = any(d == 0 for d in degrees(g))
    bounds = None if isolated or g.n < 2 else optimum_bounds(es, bf)
    limits = None if isolated or g.n < 2 else limit_targets(g, bf)
    hi = max_cost(es, bf.c).value
    uniform = copt.value if hi == copt.value else None
    wcf = bool(g.n) and not isolated and is_forest(g) and is_well_covered_forest(g)
    return ExtremalReport(
        graph=g,
        bf=bf,
        weights=weights,
        W_U_star=wopt,
        W_U_S_star=sp.welfare,
        W_U_D_star=None if dist is None else dist.welfare_inf,
        E_w_star=eopt,
        E_w_S_star=sp.effort,
        C_star=copt,
        C_S_star=sp.cost,
        C_D_star=None if dist is None else dist.cost_min,
        specialized=sp,
        distributed=dist,
        bounds=bounds,
        limits=limits,
        uniform_cost=uniform,
        well_covered_forest=wcf,
    )
