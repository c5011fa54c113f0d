"""Verification suite for the equilibrium refinement results over seeded instance families.

Each check returns a ``CheckResult`` with status ``pass``, ``fail`` or
``n/a``. With a single user graph, every check runs on that graph alone and
reports ``n/a`` when the graph is outside the family it applies to.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from .benefit import make_benefit, solve_k_for_sigma
from .equilibria import EquilibriumPiece, check_equilibrium, closed_effort, enumerate_pieces, sample_piece
from .exact import ZERO
from .generators import gnp, random_connected, random_forest, well_covered_forest
from .graph import Graph, cube_graph, cycle_graph, degrees, dependants_and_guardians, is_forest, is_regular
from .graph import is_well_covered_forest
from .indsets import (
    degree_weights,
    enumerate_maximal_independent_sets,
    independent_domination_number,
    max_weight_independent_set,
    smallest_maximal_independent_set,
)
from .metrics import (
    CheckReport,
    check_dependant_rules,
    check_forest_structure,
    check_structure,
    classify,
    cost,
    improve_pendant_cospecialist,
    pendant_cospecialist_pairs,
    welfare,
    welfare_gain,
    weighted_effort,
)
from .optimizer import (
    FW_TOL,
    distributed_extrema,
    max_welfare,
    max_weighted_effort,
    min_cost,
    piece_max_welfare,
    specialized_extrema,
    welfare_bounds,
)

DEFAULT_SEED = 20260101
E_STAR = Fraction(1)
COST = Fraction(1)
B0 = Fraction(1)

# curvature range for the pendant-improvement margin, sampled log-uniformly;
# at larger k the gain decays like exp(-k (scn - e*)) below the float floor,
# so there only its sign is checked
PENDANT_K_RANGE = (1e-2, 1.0)
PENDANT_SIGN_KS = (1e1, 1e2)


@dataclass(frozen=True)
class CheckResult:
    number: int
    name: str
    status: str  # "pass", "fail" or "n/a"
    detail: str
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "n/a": "N/A "}[self.status]
        return f"[{tag}] {self.number:2d} {self.name}: {self.detail}"


# -- instance families -----------------------------------------------------

def _rng(seed: int, family: int) -> np.random.Generator:
    return np.random.default_rng([seed, family])


@lru_cache(maxsize=None)
def small_graphs(seed: int) -> tuple:
    rng = _rng(seed, 1)
    out = []
    for _ in range(50):
        n = int(rng.integers(1, 8))
        out.append(gnp(n, float(rng.uniform(0.15, 0.9)), rng))
    return tuple(out)


@lru_cache(maxsize=None)
def weighted_graphs(seed: int) -> tuple:
    rng = _rng(seed, 2)
    out = []
    for _ in range(50):
        n = int(rng.integers(1, 13))
        g = gnp(n, float(rng.uniform(0.15, 0.5)), rng)
        w = tuple(Fraction(int(rng.integers(0, 11)), int(rng.integers(1, 5))) for _ in range(n))
        out.append((g, w))
    return tuple(out)


@lru_cache(maxsize=None)
def forests(seed: int) -> tuple:
    rng = _rng(seed, 3)
    return tuple(random_forest(int(rng.integers(1, 15)), rng, float(rng.uniform(0.0, 0.4))) for _ in range(50))


def regular_graphs() -> tuple:
    return tuple(cycle_graph(n) for n in range(3, 11)) + (cube_graph(),)


@lru_cache(maxsize=None)
def connected_graphs(seed: int) -> tuple:
    rng = _rng(seed, 4)
    return tuple(random_connected(int(rng.integers(2, 11)), float(rng.uniform(0.0, 0.35)), rng) for _ in range(20))


@lru_cache(maxsize=None)
def leafy_forests(seed: int) -> tuple:
    rng = _rng(seed, 5)
    return tuple(random_forest(int(rng.integers(2, 13)), rng, float(rng.uniform(0.0, 0.4)), min_tree=2) for _ in range(20))


@lru_cache(maxsize=None)
def well_covered(seed: int) -> tuple:
    rng = _rng(seed, 6)
    return tuple(well_covered_forest(2 + i % 7, rng) for i in range(20))


@dataclass
class Pools:
    """The graphs each check runs on; a single user graph fills every pool it fits."""

    small: tuple
    weighted: tuple
    forests: tuple
    regular: tuple
    connected: tuple
    leafy: tuple
    well_covered: tuple
    distributed_cycles: tuple

    @classmethod
    def default(cls, seed: int) -> "Pools":
        return cls(
            small=small_graphs(seed),
            weighted=weighted_graphs(seed),
            forests=forests(seed),
            regular=regular_graphs(),
            connected=connected_graphs(seed),
            leafy=leafy_forests(seed),
            well_covered=well_covered(seed),
            distributed_cycles=(cycle_graph(4), cycle_graph(6)),
        )

    @classmethod
    def single(cls, g: Graph, n_max: int = 16) -> "Pools":
        no_iso = g.n >= 2 and all(d > 0 for d in degrees(g))
        forest = is_forest(g)
        reg = g.n >= 1 and is_regular(g) is not None
        return cls(
            small=(g,) if g.n <= 7 else (),
            weighted=((g, degree_weights(g)),) if g.n <= n_max else (),
            forests=(g,) if forest and g.n <= n_max else (),
            regular=(g,) if reg and g.n >= 1 and g.n <= n_max else (),
            connected=(g,) if no_iso and g.n <= n_max else (),
            leafy=(g,) if no_iso and forest and g.n <= n_max else (),
            well_covered=(g,) if no_iso and forest and is_well_covered_forest(g) and g.n <= n_max else (),
            distributed_cycles=(g,) if reg and g.n <= n_max and enumerate_pieces(g, E_STAR, n_max).distributed() else (),
        )

    def everything(self) -> list[Graph]:
        seen, out = set(), []
        groups = [self.small, [g for g, _ in self.weighted], self.forests, self.regular,
                  self.connected, self.leafy, self.well_covered, self.distributed_cycles]
        for grp in groups:
            for g in grp:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out


def _bf(k: float, n: int | None = None):
    return make_benefit(B0, COST, E_STAR, k, n_ref=n)


def _specialized_profile(g: Graph, members) -> tuple:
    s = set(members)
    return tuple(E_STAR if i in s else ZERO for i in range(g.n))


# -- 1. grid oracle --------------------------------------------------------

STEPS = 8


def _grid_equilibria(g: Graph) -> np.ndarray:
    """Codes of grid profiles (step e*/8) meeting the equilibrium conditions."""
    n = g.n
    if n == 0:
        return np.array([0], dtype=np.int64)
    M = np.array(g.adjacency(), dtype=np.int16) + np.eye(n, dtype=np.int16)
    base = STEPS + 1
    total = base ** n
    weights = base ** np.arange(n, dtype=np.int64)
    found = []
    chunk = 1 << 20
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        X = ((codes[:, None] // weights[None, :]) % base).astype(np.int16)
        scn = X @ M.T
        ok = np.all((scn >= STEPS) & ((X == 0) | (scn == STEPS)), axis=1)
        found.append(codes[ok])
    return np.concatenate(found)


def _grid_in_piece(piece: EquilibriumPiece, g: Graph) -> set:
    """Codes of grid profiles inside one piece, from its parametrization and inequalities."""
    n = g.n
    if n == 0:
        return {0}
    den = 1
    vals = list(piece.base) + [v for d in piece.directions for v in d]
    for v in vals:
        den = den * v.denominator // math.gcd(den, v.denominator)
    base_i = np.array([int(v * den * STEPS) for v in piece.base], dtype=np.int64)
    dirs = np.array([[int(v * den) for v in d] for d in piece.directions], dtype=np.int64).reshape(len(piece.free), n)
    k = len(piece.free)
    smask = piece.support_mask
    cover = np.zeros((n, n), dtype=np.int64)
    outside = []
    for i in range(n):
        if not (smask >> i) & 1:
            outside.append(i)
            for j in range(n):
                if (g.nbr_mask(i) >> j) & 1 and (smask >> j) & 1:
                    cover[i, j] = 1
    weights = (STEPS + 1) ** np.arange(n, dtype=np.int64)
    out = set()
    total = (STEPS + 1) ** k
    chunk = 1 << 18
    for lo in range(0, total, chunk):
        codes = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
        if k:
            T = (codes[:, None] // ((STEPS + 1) ** np.arange(k, dtype=np.int64))[None, :]) % (STEPS + 1)
            X = base_i[None, :] + T @ dirs
        else:
            X = base_i[None, :].copy()
        on_grid = np.all(X % den == 0, axis=1)
        X = X[on_grid] // den
        ok = np.all(X >= 0, axis=1)
        if outside:
            ok &= np.all((X @ cover.T)[:, outside] >= STEPS, axis=1)
        out.update(int(c) for c in (X[ok] @ weights))
    return out


def _decode(code: int, n: int) -> tuple:
    out = []
    for _ in range(n):
        out.append(Fraction(code % (STEPS + 1), STEPS))
        code //= STEPS + 1
    return tuple(out)


def check_grid_oracle(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.small:
        return "n/a", "needs a graph with at most 7 vertices"
    rng = _rng(seed, 11)
    points = 0
    for g in pools.small:
        es = enumerate_pieces(g, E_STAR)
        grid = set(int(c) for c in _grid_equilibria(g))
        covered = set()
        for p in es.pieces:
            covered |= _grid_in_piece(p, g)
        if grid != covered:
            diff = sorted(grid ^ covered)[:3]
            return "fail", f"n={g.n} edges={g.sorted_edges()}: mismatch at {[_decode(c, g.n) for c in diff]}"
        # the exact checker agrees on every covered point and on random grid points
        probe = list(covered) + [int(c) for c in rng.integers(0, (STEPS + 1) ** g.n, size=200)]
        for c in probe:
            if check_equilibrium(g, _decode(c, g.n), E_STAR).ok != (c in grid):
                return "fail", f"exact checker disagrees with grid oracle at {_decode(c, g.n)}"
        points += len(grid)
    return "pass", f"{len(pools.small)} graphs, {points} grid equilibria matched exactly"


# -- 2. specialized profiles and maximal independent sets -----------------

def check_mis_bijection(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.small:
        return "n/a", "needs a graph with at most 7 vertices"
    total = 0
    for g in pools.small:
        es = enumerate_pieces(g, E_STAR)
        expected = {_specialized_profile(g, s) for s in enumerate_maximal_independent_sets(g)}
        found = set()
        for bits in range(1 << g.n):
            x = tuple(E_STAR if (bits >> i) & 1 else ZERO for i in range(g.n))
            if es.contains(x):
                found.add(x)
        if found != expected:
            return "fail", f"edges={g.sorted_edges()}: binary pieces points {sorted(found ^ expected)[:3]}"
        total += len(expected)
    return "pass", f"{len(pools.small)} graphs, {total} specialized profiles"


# -- 3. weighted effort ----------------------------------------------------

def check_effort(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.weighted:
        return "n/a", "no instance"
    for g, w in pools.weighted:
        es = enumerate_pieces(g, E_STAR)
        best = max_weighted_effort(es, w)
        sp = specialized_extrema(g, E_STAR, _bf(1.0), w)
        mis, alpha_w = max_weight_independent_set(g, w)
        target = E_STAR * alpha_w
        if not (best.value == sp.effort == target):
            return "fail", f"edges={g.sorted_edges()} w={w}: E*={best.value} E^S*={sp.effort} e*alpha_w={target}"
        if sp.effort_witness != _specialized_profile(g, mis) or weighted_effort(w, _specialized_profile(g, mis)) != best.value:
            return "fail", f"edges={g.sorted_edges()}: max-weight set witness does not attain E*"
    return "pass", f"{len(pools.weighted)} weighted graphs, E* = E^S* = e* alpha_w"


# -- 4. cost on forests ----------------------------------------------------

def check_forest_cost(pools: Pools, seed: int, negative: tuple = (cycle_graph(4),)) -> tuple[str, str]:
    if not pools.forests:
        return "n/a", "graph is not a forest"
    for g in pools.forests:
        es = enumerate_pieces(g, E_STAR)
        c_star = min_cost(es, COST).value
        c_specialized = specialized_extrema(g, E_STAR, _bf(1.0), degree_weights(g)).cost
        target = COST * E_STAR * independent_domination_number(g)
        if not (c_star == c_specialized == target):
            return "fail", f"edges={g.sorted_edges()}: C*={c_star} C^S*={c_specialized} ce*beta={target}"
        if cost(COST, _specialized_profile(g, smallest_maximal_independent_set(g))) != c_star:
            return "fail", f"edges={g.sorted_edges()}: smallest maximal independent set does not attain C*"
    strict = []
    for g in negative:
        es = enumerate_pieces(g, E_STAR)
        if min_cost(es, COST).value < COST * E_STAR * independent_domination_number(g):
            strict.append(g.n)
    if negative and not strict:
        return "fail", "negative control: no non-forest shows C* < C^S*"
    return "pass", f"{len(pools.forests)} forests, C* = C^S* = ce*beta; non-forest control strict"


# -- 5. regular networks ---------------------------------------------------

def check_regular_cost(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.regular:
        return "n/a", "graph is not regular"
    for g in pools.regular:
        d = is_regular(g)
        es = enumerate_pieces(g, E_STAR)
        uniform = tuple(E_STAR / (d + 1) for _ in range(g.n))
        target = COST * E_STAR * Fraction(g.n, d + 1)
        c_star = min_cost(es, COST).value
        dist = distributed_extrema(es, _bf(1.0))
        if dist is None:
            return "fail", f"n={g.n}: no distributed equilibrium"
        if not (c_star == dist.cost_min == target):
            return "fail", f"n={g.n}: C*={c_star} C^D*={dist.cost_min} target={target}"
        if not check_equilibrium(g, uniform, E_STAR).ok or dist.cost_witness != uniform:
            return "fail", f"n={g.n}: uniform profile is not the distributed cost witness"
    return "pass", f"{len(pools.regular)} regular graphs, C* = C^D* = ce* n/(d+1)"


# -- 6. concavity to one ---------------------------------------------------

HIGH_SIGMAS = (0.9, 0.99, 0.999, 0.9999)
LOW_SIGMAS = (0.1, 0.01, 0.001)
MONOTONE_SLACK = 2 * FW_TOL


def _sweep(g: Graph, sigmas, reference: tuple):
    """Per concavity: (W_U* - W_U(reference), W_U* - target_offset pieces)."""
    es = enumerate_pieces(g, E_STAR)
    rows = []
    for s in sigmas:
        k = solve_k_for_sigma(s, g.n, E_STAR)
        bf = _bf(k, g.n)
        opt = max_welfare(es, bf)
        rows.append((s, bf, opt, welfare_gain(bf, g, opt.witness, reference)))
    return rows


def check_high_concavity_limit(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.connected:
        return "n/a", "needs a graph without isolated vertices"
    worst = 0.0
    for g in pools.connected:
        mis, alpha_d = max_weight_independent_set(g, degree_weights(g))
        ref = _specialized_profile(g, mis)
        rows = _sweep(g, HIGH_SIGMAS, ref)
        tol = 1e-3 * float(COST * E_STAR) * g.n
        target = float(g.n * (B0 - COST * E_STAR) + COST * E_STAR * alpha_d)
        gaps = [abs(r[3]) for r in rows]
        if not all(r[2].converged for r in rows):
            return "fail", f"edges={g.sorted_edges()}: Frank-Wolfe did not converge"
        if any(b > a + MONOTONE_SLACK for a, b in zip(gaps, gaps[1:])):
            return "fail", f"edges={g.sorted_edges()}: gaps not decreasing {gaps}"
        last_bf, last_opt = rows[-1][1], rows[-1][2]
        w_ref = welfare(last_bf, g, ref)
        errs = (gaps[-1], abs(last_opt.value - target), abs(w_ref - target))
        if max(errs) > tol:
            return "fail", f"edges={g.sorted_edges()}: errors {errs} above {tol}"
        worst = max(worst, max(e / tol for e in errs))
    return "pass", f"{len(pools.connected)} graphs, worst error {worst:.3g} of tolerance"


# -- 7. concavity to zero on forests ---------------------------------------

def check_low_concavity_limit(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.leafy:
        return "n/a", "needs a forest without isolated vertices"
    fails = []
    worst = 0.0
    for g in pools.leafy:
        ref = _specialized_profile(g, smallest_maximal_independent_set(g))
        rows = _sweep(g, LOW_SIGMAS, ref)
        tol = 1e-3 * float(COST * E_STAR) * g.n
        # W_U* - target = (W_U* - W_U(ref)) + sum_i (b(scn_i(ref)) - b(e*)), since ref costs c e* beta
        errs = []
        for _, bf, opt, gain in rows:
            excess = math.fsum(bf.diff(s, E_STAR) for s in closed_effort(g, ref))
            errs.append(abs(gain + excess))
        if not all(r[2].converged for r in rows):
            return "fail", f"edges={g.sorted_edges()}: Frank-Wolfe did not converge"
        worst = max(worst, errs[-1] / tol)
        if any(b > a + MONOTONE_SLACK for a, b in zip(errs, errs[1:])) or errs[-1] > tol:
            fails.append((g.n, round(errs[-1] / tol, 2)))
    if fails:
        return "fail", f"{len(fails)}/{len(pools.leafy)} forests miss (n, error/tolerance): {fails[:6]}"
    return "pass", f"{len(pools.leafy)} forests, worst error {worst:.3g} of tolerance"


# -- 8. linear welfare bounds ----------------------------------------------

BOUND_KS = (1e-2, 1.0, 1e2)


def check_bounds(pools: Pools, seed: int) -> tuple[str, str]:
    graphs = [g for g in pools.everything() if g.n >= 2 and all(d > 0 for d in degrees(g))]
    if not graphs:
        return "n/a", "needs a graph without isolated vertices"
    rng = _rng(seed, 8)
    samples = []
    per = max(1, math.ceil(1000 / len(graphs)))
    for gi, g in enumerate(graphs):
        es = enumerate_pieces(g, E_STAR)
        for j in range(per):
            p = es.pieces[int(rng.integers(0, len(es.pieces)))]
            samples.append((g, sample_piece(p, 1, int(rng.integers(0, 2**32)))[0]))
    samples = samples[: max(1000, len(graphs))]
    worst = math.inf
    for g, x in samples:
        for k in BOUND_KS:
            b = welfare_bounds(_bf(k, g.n), g, x, check=False)
            slack = min(b.value - b.lower, b.upper - b.value)
            worst = min(worst, slack)
            if slack < -1e-9:
                return "fail", f"edges={g.sorted_edges()} x={x} k={k}: {b}"
    return "pass", f"{len(samples)} equilibria x {len(BOUND_KS)} curvatures, min slack {worst:.3g}"


# -- 9. well-covered forests -----------------------------------------------

WC_KS = (1e-2, 1.0, 1e2)


def check_well_covered(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.well_covered:
        return "n/a", "graph is not a well-covered forest"
    rng = _rng(seed, 9)
    for g in pools.well_covered:
        es = enumerate_pieces(g, E_STAR)
        half = COST * E_STAR * Fraction(g.n, 2)
        pts = [v for p in es.pieces for v in p.vertices]
        for _ in range(100):
            p = es.pieces[int(rng.integers(0, len(es.pieces)))]
            pts.extend(sample_piece(p, 1, int(rng.integers(0, 2**32))))
        bad = [x for x in pts if cost(COST, x) != half]
        if bad:
            return "fail", f"edges={g.sorted_edges()}: cost {cost(COST, bad[0])} != {half}"
        for k in WC_KS:
            bf = _bf(k, g.n)
            for p in es.pieces:
                r = piece_max_welfare(g, bf, p)
                if not r.converged or r.gap > FW_TOL:
                    return "fail", f"edges={g.sorted_edges()} k={k}: piece {p.support} gap {r.gap}"
                if classify(g, r.witness, E_STAR).kind != "specialized":
                    return "fail", f"edges={g.sorted_edges()} k={k}: piece maximizer {r.witness} not specialized"
    return "pass", f"{len(pools.well_covered)} well-covered forests, cost n/2 and specialized maximizers"


# -- 10. pendant improvement -----------------------------------------------

def check_pendant(pools: Pools, seed: int) -> tuple[str, str]:
    rng = _rng(seed, 10)
    cases = []
    for g in pools.everything():
        es = enumerate_pieces(g, E_STAR)
        for p in es.pieces:
            for x in sample_piece(p, 2, int(rng.integers(0, 2**32))):
                for pair in pendant_cospecialist_pairs(g, x, E_STAR):
                    cases.append((g, x, pair))
    if not cases:
        return "n/a", "no sole-dependant co-specialist pair"
    lo, hi = PENDANT_K_RANGE
    worst = math.inf
    for g, x, pair in cases:
        ks = np.exp(rng.uniform(math.log(lo), math.log(hi), size=20))
        # the construction does not depend on the curvature
        y = improve_pendant_cospecialist(g, _bf(1.0, g.n), x, pair, E_STAR)
        if not check_equilibrium(g, y, E_STAR).ok or cost(COST, y) != cost(COST, x):
            return "fail", f"edges={g.sorted_edges()} x={x}: improved profile invalid"
        for k in ks:
            bf = _bf(float(k), g.n)
            gain = welfare_gain(bf, g, y, x)
            margin = gain / max(1.0, abs(welfare(bf, g, x)))
            worst = min(worst, margin)
            if not margin > 1e-12:
                return "fail", f"edges={g.sorted_edges()} x={x} pair={pair} k={k:.4g}: relative gain {margin:.3g}"
        for k in PENDANT_SIGN_KS:
            bf = _bf(k, g.n)
            if not welfare_gain(bf, g, y, x) > 0:
                return "fail", f"edges={g.sorted_edges()} x={x} pair={pair} k={k:.4g}: gain not positive"
    return "pass", (
        f"{len(cases)} pairs x 20 curvatures, min relative gain {worst:.3g}; "
        f"gain positive at k in {PENDANT_SIGN_KS}"
    )


# -- 11. structure suite ---------------------------------------------------

def check_structure_suite(pools: Pools, seed: int, inject_fault: bool = False) -> tuple[str, str]:
    rng = _rng(seed, 12)
    graphs = pools.everything()
    if not graphs:
        return "n/a", "no instance"
    checked = 0
    for gi, g in enumerate(graphs):
        es = enumerate_pieces(g, E_STAR)
        forced_fr = any(not codep for _, _, codep in dependants_and_guardians(g))
        for p in es.pieces:
            pts = list(p.vertices) + [p.centroid()] + sample_piece(p, 2, int(rng.integers(0, 2**32)))
            if inject_fault and gi == 0 and checked == 0:
                pts[0] = _perturb(g, pts[0])
            if forced_fr and all(v > 0 for v in p.centroid()):
                return "fail", f"edges={g.sorted_edges()}: piece {p.support} has no free rider"
            for x in pts:
                rep = CheckReport()
                check_structure(g, x, E_STAR, rep)
                if rep.ok:
                    check_dependant_rules(g, x, E_STAR, rep)
                    if is_forest(g):
                        check_forest_structure(g, x, E_STAR, rep)
                if not rep.ok:
                    return "fail", f"edges={g.sorted_edges()} x={x}: {rep.failures[:3]}"
                checked += 1
    return "pass", f"{checked} equilibria on {len(graphs)} graphs"


def _perturb(g: Graph, x: tuple) -> tuple:
    # raise one agent's effort past e*: breaks the equilibrium conditions
    y = list(x)
    y[0] = y[0] + E_STAR / 7 + (E_STAR if g.n == 1 else 0)
    return tuple(y)


# -- 12. distributed welfare -----------------------------------------------

DIST_KS = (1e-3, 1.0, 1e3)


def check_distributed_welfare(pools: Pools, seed: int) -> tuple[str, str]:
    if not pools.distributed_cycles:
        return "n/a", "needs a regular graph with a distributed equilibrium"
    for g in pools.distributed_cycles:
        d = is_regular(g)
        uniform = tuple(E_STAR / (d + 1) for _ in range(g.n))
        vals = [welfare(_bf(k, g.n), g, uniform) for k in DIST_KS]
        ref = vals[0]
        if any(abs(v - ref) > 1e-12 * max(1.0, abs(ref)) for v in vals):
            return "fail", f"n={g.n}: uniform welfare varies with k: {vals}"
        es = enumerate_pieces(g, E_STAR)
        dist = distributed_extrema(es, _bf(1.0, g.n))
        floor = g.n * B0 - COST * E_STAR * independent_domination_number(g)
        if dist is None or dist.welfare_inf < floor:
            return "fail", f"n={g.n}: W_U^D*={None if dist is None else dist.welfare_inf} below {floor}"
    return "pass", f"{len(pools.distributed_cycles)} graphs, welfare k-independent and above the forest floor"


CHECKS: list[tuple[int, str, Callable]] = [
    (1, "equilibrium pieces match grid oracle", check_grid_oracle),
    (2, "binary equilibria are maximal independent sets", check_mis_bijection),
    (3, "weighted effort maximized by a specialized equilibrium", check_effort),
    (4, "forest cost minimized by a specialized equilibrium", check_forest_cost),
    (5, "regular graphs minimize cost at the uniform profile", check_regular_cost),
    (6, "welfare limit as concavity tends to one", check_high_concavity_limit),
    (7, "forest welfare limit as concavity tends to zero", check_low_concavity_limit),
    (8, "linear welfare bounds hold", check_bounds),
    (9, "well-covered forests: equal cost, specialized maximizers", check_well_covered),
    (10, "pendant co-specialist improvement", check_pendant),
    (11, "equilibrium structure rules", check_structure_suite),
    (12, "distributed welfare independent of curvature", check_distributed_welfare),
]


def run_check(number: int, pools: Pools, seed: int, inject_fault: bool = False) -> CheckResult:
    num, name, fn = next(c for c in CHECKS if c[0] == number)
    t0 = time.perf_counter()
    if num == 11:
        status, detail = fn(pools, seed, inject_fault=inject_fault)
    elif num == 4 and len(pools.forests) <= 1:
        status, detail = fn(pools, seed, negative=())
    else:
        status, detail = fn(pools, seed)
    return CheckResult(num, name, status, detail, time.perf_counter() - t0)


def run_all(seed: int = DEFAULT_SEED, graph: Graph | None = None, inject_fault: bool = False,
            only: list[int] | None = None, n_max: int = 16) -> list[CheckResult]:
    pools = Pools.single(graph, n_max) if graph is not None else Pools.default(seed)
    return [run_check(num, pools, seed, inject_fault) for num, _, _ in CHECKS if only is None or num in only]
