import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from netgoods.benefit import concavity, make_benefit, sigma_vectors, solve_k_for_sigma
from netgoods.generators import random_connected
from netgoods.graph import Graph, cycle_graph, degrees, path_graph

ks = st.floats(1e-3, 1e2)


@given(ks, st.fractions(min_value=-3, max_value=3), st.fractions(min_value=F(1, 4), max_value=4))
def test_pinned_value_and_slope(k, b0, c):
    bf = make_benefit(b0, c, 1, k)
    assert bf(1) == pytest.approx(float(b0), abs=1e-12)
    assert bf.derivative(1) == pytest.approx(float(c), rel=1e-12)


def test_linear_limit():
    bf = make_benefit(1, 1, 1, 1e-9)
    assert bf(F(5, 2)) == pytest.approx(1 + 1.5, rel=1e-8)


def test_default_b0_is_c_e_star():
    assert make_benefit(c=2, e_star=F(3, 2)).b0 == 3


@pytest.mark.parametrize("kw", [dict(c=0), dict(e_star=-1), dict(k=0), dict(k=float("inf"))])
def test_bad_parameters(kw):
    with pytest.raises(ValueError):
        make_benefit(**kw)


def test_concavity_closed_form():
    bf = make_benefit(k=math.log(2))
    assert concavity(bf, 2) == pytest.approx(1 / (2 * math.log(2)), abs=1e-15)
    assert concavity(make_benefit(k=1e-12), 5) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        concavity(bf, 1)


@given(ks, st.integers(2, 12))
def test_concavity_in_unit_interval_and_matches_definition(k, n):
    bf = make_benefit(k=k)
    s = concavity(bf, n)
    assert 0 < s < 1
    assert s == pytest.approx((bf(n) - bf(1)) / (n - 1), rel=1e-9)


def test_solve_k_for_sigma():
    assert solve_k_for_sigma(1 / (2 * math.log(2)), 2, 1) == pytest.approx(math.log(2), abs=1e-10)
    prev = math.inf
    for t in (0.5, 0.9, 0.99, 0.999):
        k = solve_k_for_sigma(t, 4)
        assert k < prev
        prev = k
    for bad in (0, 1, -0.5):
        with pytest.raises(ValueError):
            solve_k_for_sigma(bad, 3)


@given(st.floats(1e-4, 1 - 1e-4), st.integers(2, 16), st.fractions(min_value=F(1, 3), max_value=3))
def test_solve_k_reproduces_target(target, n, e):
    k = solve_k_for_sigma(target, n, e)
    assert concavity(make_benefit(e_star=e, k=k), n) == pytest.approx(target, abs=1e-10)


def test_diff_is_stable_far_out():
    bf = make_benefit(k=100.0)
    d = bf.diff(F(3), F(2))
    assert d > 0
    assert d == pytest.approx(math.exp(-100) / 100 * (1 - math.exp(-100)), rel=1e-12)
    assert bf.diff(2, 3) == -d and bf.diff(2, 2) == 0.0


@given(ks, st.floats(0, 5))
def test_derivative_central_difference(k, y):
    bf = make_benefit(k=k)
    h = 1e-5
    num = (bf(y + h) - bf(y - h)) / (2 * h)
    assert num == pytest.approx(bf.derivative(y), rel=1e-5, abs=1e-9)


def test_sigma_vectors_p2():
    bf = make_benefit(k=0.7)
    sv = sigma_vectors(bf, path_graph(2))
    sb = concavity(bf, 2)
    assert sv.sigma == sv.sigma_prime == (sb, sb)
    assert sv.l == sv.u == pytest.approx((2 * sb - 1, 2 * sb - 1))


def test_sigma_vectors_c4():
    bf = make_benefit(k=0.7)
    sv = sigma_vectors(bf, cycle_graph(4))
    assert len(set(sv.sigma)) == 1 and len(set(sv.sigma_prime)) == 1
    assert sv.sigma[0] == pytest.approx(bf(2) - bf(1))
    assert sv.sigma_prime[0] == pytest.approx(bf.derivative(2))


def test_sigma_vectors_rejects_isolated():
    with pytest.raises(ValueError):
        sigma_vectors(make_benefit(), Graph.from_edges(3, [(0, 1)]))


@given(st.integers(2, 10), st.integers(0, 2**32 - 1), ks)
def test_slope_chain_and_sandwich(n, seed, k):
    g = random_connected(n, 0.3, seed)
    bf = make_benefit(k=k)
    sv = sigma_vectors(bf, g)
    for j, d in enumerate(degrees(g)):
        if d == 1:
            continue
        assert 0 <= sv.sigma_prime[j] <= sv.sigma[j] <= sv.sigma_b * (n - 1) / (d - 1) + 1e-12
        for y in np.linspace(1, d, 17):
            lo = bf(1) + sv.sigma[j] * (y - 1)
            hi = bf(d) - sv.sigma_prime[j] * (d - y)
            assert lo - 1e-12 <= bf(y) <= hi + 1e-12


def test_bound_vectors_limits():
    g = path_graph(5)
    deg = degrees(g)
    errs_hi, errs_lo = [], []
    for t in (2, 4, 6):
        sv = sigma_vectors(make_benefit(k=solve_k_for_sigma(1 - 10**-t, g.n)), g)
        errs_hi.append(max(max(abs(a - d), abs(b - d)) for a, b, d in zip(sv.l, sv.u, deg)))
        sv = sigma_vectors(make_benefit(k=solve_k_for_sigma(10**-t, g.n)), g)
        errs_lo.append(
            max(max(abs(a + 1), abs(b + 1), abs(s - sp)) for a, b, s, sp in zip(sv.l, sv.u, sv.sigma, sv.sigma_prime))
        )
    assert errs_hi == sorted(errs_hi, reverse=True) and errs_hi[-1] < 1e-4
    assert errs_lo == sorted(errs_lo, reverse=True) and errs_lo[-1] < 1e-4
