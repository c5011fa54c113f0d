import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import brute_mis
from netgoods.benefit import make_benefit, solve_k_for_sigma
from netgoods.equilibria import enumerate_pieces, sample_piece
from netgoods.generators import gnp, random_connected, random_forest
from netgoods.graph import Graph, cycle_graph, path_graph
from netgoods.indsets import degree_weights, unit_weights
from netgoods.metrics import classify, welfare
from netgoods.optimizer import (
    FW_TOL,
    analyze,
    distributed_extrema,
    limit_targets,
    max_linear,
    max_weighted_effort,
    max_welfare,
    min_cost,
    optimum_bounds,
    piece_max_welfare,
    specialized_extrema,
    welfare_bounds,
)


def test_max_linear_examples(P4):
    es = enumerate_pieces(P4)
    assert max_linear(es, degree_weights(P4)).value == 3
    assert -max_linear(es, [-1] * 4).value == 2
    assert max_linear(es, [0] * 4).value == 0
    with pytest.raises(ValueError):
        max_linear(es, [1, 2])


def test_cost_and_effort_examples(P4, C4):
    c4 = min_cost(enumerate_pieces(C4), 1)
    assert c4.value == F(4, 3) and c4.witness == (F(1, 3),) * 4
    assert min_cost(enumerate_pieces(C4), F(5, 2)).value == F(10, 3)
    assert min_cost(enumerate_pieces(P4), 1).value == 2
    e = max_weighted_effort(enumerate_pieces(P4), degree_weights(P4))
    assert e.value == 3 and classify(P4, e.witness).kind == "specialized"
    with pytest.raises(ValueError):
        max_weighted_effort(enumerate_pieces(P4), [1, -1, 0, 0])


def test_specialized_extrema_examples(P3, P4):
    bf = make_benefit()
    assert specialized_extrema(P3, 1, bf, unit_weights(P3)).cost == 1
    s = specialized_extrema(P4, 1, bf, unit_weights(P4))
    assert s.cost == 2 and s.effort == 2
    s = specialized_extrema(P4, 1, bf, degree_weights(P4))
    assert s.effort == 3 and s.effort_ties == 2 and s.effort_witness == (1, 0, 1, 0)


def test_max_welfare_p4_specialized(P4):
    es = enumerate_pieces(P4)
    for k in (1e-2, 1.0, 1e2):
        opt = max_welfare(es, make_benefit(k=k))
        assert opt.converged and classify(P4, opt.witness).kind == "specialized"


def test_max_welfare_c4_high_concavity_limit(C4):
    es = enumerate_pieces(C4)
    target = 4 * (1 - 1) + 1 * 4
    errs = [abs(max_welfare(es, make_benefit(k=solve_k_for_sigma(s, 4))).value - target) for s in (0.9, 0.99, 0.999)]
    assert errs == sorted(errs, reverse=True) and errs[-1] < 1e-2


def test_max_welfare_p2_constant(P2):
    opt = max_welfare(enumerate_pieces(P2), make_benefit(b0=F(7, 4), k=3.0))
    assert opt.value == pytest.approx(2 * 1.75 - 1)


def test_distributed_extrema_examples(P2, P3, C4):
    bf = make_benefit(b0=2)
    d = distributed_extrema(enumerate_pieces(C4), bf)
    assert d.welfare_inf == 4 * 2 - F(4, 3) and d.cost_min == F(4, 3)
    assert not d.welfare_closure_witness
    d = distributed_extrema(enumerate_pieces(P2), bf)
    assert d.cost_min == 1 and d.welfare_inf == 3
    assert distributed_extrema(enumerate_pieces(P3), bf) is None


def test_welfare_bounds_examples(P4, C4):
    piece_list = enumerate_pieces(P4).pieces
    for k in (1e-2, 1.0, 1e2):
        bf = make_benefit(k=k)
        for i in range(100):
            p = piece_list[i % len(piece_list)]
            (x,) = sample_piece(p, 1, seed=i)
            assert welfare_bounds(bf, P4, x).holds()
    b = welfare_bounds(make_benefit(k=1.0), C4, [F(1, 3)] * 4)
    assert math.isfinite(b.lower) and math.isfinite(b.upper) and b.lower <= b.value <= b.upper


def test_dependant_bound_is_tight():
    # on a star the leaves contribute b(e*) exactly to both bounds
    g = Graph.from_edges(3, [(0, 1), (0, 2)])
    bf = make_benefit(k=2.0)
    b = welfare_bounds(bf, g, (1, 0, 0))
    assert b.lower <= b.value <= b.upper


def test_limit_targets_examples(P4, C4):
    bf = make_benefit(b0=F(3, 2))
    lim = limit_targets(P4, bf)
    assert lim.sigma_to_one == 4 * (F(3, 2) - 1) + 3
    assert lim.sigma_to_zero == 4 * F(3, 2) - 2
    lim = limit_targets(C4, bf)
    assert lim.sigma_to_one == 4 * (F(3, 2) - 1) + 4 and lim.sigma_to_zero is None
    with pytest.raises(ValueError):
        limit_targets(C4, bf, require_low=True)
    with pytest.raises(ValueError):
        limit_targets(Graph(2), bf)


def test_analyze_report(C4, P4):
    rep = analyze(enumerate_pieces(C4), make_benefit(k=1.0)).to_json()
    assert rep["C_star"]["value"] == "4/3"
    assert rep["W_U_D_star"]["value"] == "8/3"
    assert rep["well_covered_forest"] is False
    rep = analyze(enumerate_pieces(P4), make_benefit(k=1.0)).to_json()
    assert rep["well_covered_forest"] is True and rep["cost_equals_half_c_e_n"] is True
    assert rep["all_equilibria_same_cost"] == "2"
    assert rep["W_U_star"]["value"] >= rep["W_U_S_star"]["value"] - 1e-12
    with pytest.raises(ValueError):
        analyze(enumerate_pieces(C4), make_benefit(e_star=2))


@given(st.integers(2, 9), st.floats(0.1, 0.8), st.integers(0, 2**32 - 1), st.floats(1e-2, 1e2))
@settings(max_examples=30)
def test_report_orderings(n, p, seed, k):
    g = random_connected(n, p, seed)
    es = enumerate_pieces(g)
    bf = make_benefit(k=k)
    rep = analyze(es, bf)
    assert rep.W_U_star.value >= rep.W_U_S_star - 1e-12
    assert rep.E_w_star.value == rep.E_w_S_star
    assert rep.C_star.value <= rep.C_S_star
    if rep.C_D_star is not None:
        assert rep.C_star.value <= rep.C_D_star <= rep.C_S_star
        assert rep.W_U_D_star >= n * bf.b0 - bf.c * len(min(brute_mis(g), key=len))
    for name, (lo, hi) in optimum_bounds(es, bf).items():
        val = rep.W_U_star.value if name == "W_U_star" else rep.W_U_S_star
        assert lo - 1e-9 <= val <= hi + 1e-9


# -- Frank-Wolfe against a dense grid --------------------------------------

def grid_welfare(g, k, x):
    a = np.array(g.adjacency(), dtype=float) + np.eye(g.n)
    scn = a @ x
    return float(np.sum(1.0 + (1.0 / k) * -np.expm1(-k * (scn - 1.0))) - np.sum(x))


def grid_max(g, k, piece):
    """Grid over the free coordinates at step 1/32, then three zoom rounds."""
    base = np.array([float(v) for v in piece.base])
    dirs = np.array([[float(v) for v in d] for d in piece.directions]).reshape(len(piece.directions), g.n)
    rows = piece.inequalities(g)
    G = np.array([[float(c) for c in r] for r, _ in rows])
    h = np.array([float(v) for _, v in rows])

    def feasible(t):
        x = base + t @ dirs
        return (G @ x >= h - 1e-12).all(), x

    best, best_t = -math.inf, None
    centre, half, step = np.full(len(piece.free), 0.5), 0.5, 1 / 32
    for _ in range(4):
        axes = [np.arange(c - half, c + half + step / 2, step) for c in centre]
        for t in itertools.product(*axes):
            t = np.array(t)
            ok, x = feasible(t)
            if ok:
                w = grid_welfare(g, k, x)
                if w > best:
                    best, best_t = w, t
        centre, half, step = best_t, step, step / 32
    return best


low_dim_graphs = st.builds(gnp, st.integers(2, 7), st.floats(0.2, 0.8), st.integers(0, 2**32 - 1))


@given(low_dim_graphs, st.sampled_from([1e-2, 0.3, 1.0, 5.0, 1e2]))
@settings(max_examples=25)
def test_frank_wolfe_matches_grid(g, k):
    bf = make_benefit(k=k)
    for piece in enumerate_pieces(g).pieces:
        if not 1 <= piece.param_dim <= 2 or piece.dimension != piece.param_dim:
            continue
        r = piece_max_welfare(g, bf, piece)
        assert r.converged and r.gap <= FW_TOL
        ref = grid_max(g, k, piece)
        assert r.value >= ref - 1e-9
        assert r.value - ref <= 1e-6
        assert r.value == pytest.approx(welfare(bf, g, r.witness), abs=1e-12)


def test_frank_wolfe_grid_fixed_cases():
    for g in (path_graph(4), cycle_graph(5), random_forest(8, 3, min_tree=2)):
        for k in (1e-2, 1.0, 1e2):
            bf = make_benefit(k=k)
            for piece in enumerate_pieces(g).pieces:
                if 1 <= piece.param_dim <= 2 and piece.dimension == piece.param_dim:
                    r = piece_max_welfare(g, bf, piece)
                    assert abs(r.value - grid_max(g, k, piece)) <= 1e-6
