"""Shifted-exponential benefit family with pinned value and slope at e*.

``b(y) = b0 + (c/k) * (1 - exp(-k (y - e*)))`` so that ``b(e*) = b0`` and
``b'(e*) = c`` for every curvature ``k > 0``. Larger ``k`` means a more
concave benefit and a smaller concavity ``sigma_b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import to_fraction
from .graph import Graph, degrees


@dataclass(frozen=True)
class BenefitFunction:
    b0: Fraction
    c: Fraction
    e_star: Fraction
    k: float
    n_ref: int | None = None

    def __call__(self, y) -> float:
        return float(self.b0) + float(self.c) / self.k * -math.expm1(-self.k * float(y - self.e_star))

    def derivative(self, y) -> float:
        return float(self.c) * math.exp(-self.k * float(y - self.e_star))

    def diff(self, a, a2) -> float:
        """``b(a) - b(a2)`` without cancellation.

        With exact inputs the gap ``a - a2`` is formed exactly, so tiny
        differences far out on the flat part of ``b`` keep their precision.
        """
        a, a2 = to_fraction(a), to_fraction(a2)
        if a == a2:
            return 0.0
        lo = min(a, a2)
        gap = float(abs(a - a2))
        mag = float(self.c) / self.k * math.exp(-self.k * float(lo - self.e_star)) * -math.expm1(-self.k * gap)
        return mag if a > a2 else -mag

    def sigma_b(self, n: int | None = None) -> float:
        n = self.n_ref if n is None else n
        if n is None:
            raise ValueError("no agent count given for the concavity")
        return concavity(self, n)

    def to_json(self) -> dict:
        out = {
            "b0": str(self.b0),
            "c": str(self.c),
            "e_star": str(self.e_star),
            "k": self.k,
        }
        if self.n_ref is not None and self.n_ref >= 2:
            out["sigma_b"] = concavity(self, self.n_ref)
        return out


def make_benefit(b0=None, c=1, e_star=1, k: float = 1.0, n_ref: int | None = None) -> BenefitFunction:
    """Build the benefit function; ``b0`` defaults to ``c * e*``."""
    cq, eq = to_fraction(c), to_fraction(e_star)
    if cq <= 0:
        raise ValueError("marginal cost c must be positive")
    if eq <= 0:
        raise ValueError("e* must be positive")
    k = float(k)
    if not (k > 0 and math.isfinite(k)):
        raise ValueError("curvature k must be a positive finite number")
    b0q = cq * eq if b0 is None else to_fraction(b0)
    return BenefitFunction(b0q, cq, eq, k, n_ref)


def _secant_slope(t: float) -> float:
    # (1 - exp(-t)) / t, equal to 1 at t = 0
    if t == 0:
        return 1.0
    return -math.expm1(-t) / t


def concavity(bf: BenefitFunction, n: int) -> float:
    """sigma_b = (b(n e*) - b(e*)) / (c e* (n - 1))."""
    if n < 2:
        raise ValueError("concavity needs at least two agents")
    return _secant_slope(bf.k * (n - 1) * float(bf.e_star))


def solve_k_for_sigma(target: float, n: int, e_star=1) -> float:
    """Curvature ``k`` whose concavity over ``n`` agents equals ``target``."""
    target = float(target)
    if not 0 < target < 1:
        raise ValueError("target concavity must lie strictly between 0 and 1")
    if n < 2:
        raise ValueError("concavity needs at least two agents")
    scale = (n - 1) * float(to_fraction(e_star))
    hi = 1.0
    while _secant_slope(hi * scale) > target:
        hi *= 2.0
    lo = 0.0
    while hi - lo > 1e-12 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _secant_slope(mid * scale) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class SigmaVectors:
    sigma: tuple
    sigma_prime: tuple
    l: tuple
    u: tuple
    sigma_b: float


def sigma_vectors(bf: BenefitFunction, g: Graph) -> SigmaVectors:
    deg = degrees(g)
    if any(d == 0 for d in deg):
        raise ValueError("secant and tangent slopes need a graph without isolated vertices")
    sb = concavity(bf, g.n)
    e = float(bf.e_star)
    sig, sigp = [], []
    for d in deg:
        if d == 1:
            sig.append(sb)
            sigp.append(sb)
        else:
            sig.append(_secant_slope(bf.k * (d - 1) * e))
            sigp.append(math.exp(-bf.k * (d - 1) * e))
    l, u = [], []
    for j in range(g.n):
        nb = [i for i in range(g.n) if (g.nbr_mask(j) >> i) & 1]
        l.append(sig[j] + math.fsum(sig[i] for i in nb) - 1.0)
        u.append(sigp[j] + math.fsum(sigp[i] for i in nb) - 1.0)
    return SigmaVectors(tuple(sig), tuple(sigp), tuple(l), tuple(u), sb)
