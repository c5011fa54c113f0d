"""Exact rational linear algebra and polytope vertex enumeration."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(v) -> Fraction:
    """Coerce ints, Fractions, rational strings and floats to a Fraction.

    Floats go through their shortest decimal repr, so ``0.4`` becomes ``2/5``.
    """
    if isinstance(v, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(v, Fraction):
        return v
    if isinstance(v, Rational):
        return Fraction(v)
    if isinstance(v, float):
        return Fraction(repr(v))
    if isinstance(v, str):
        return Fraction(v.strip())
    if hasattr(v, "item"):  # numpy scalars
        return to_fraction(v.item())
    raise TypeError(f"cannot read {v!r} as a rational number")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def solve_affine(matrix: Sequence[Sequence], rhs: Sequence):
    """Solve ``matrix @ x = rhs`` exactly.

    Returns ``(particular, basis, free)`` or ``None`` when inconsistent.
    ``particular`` has every free variable at zero. ``basis`` holds one
    nullspace vector per free column (listed in ``free``, ascending), equal to
    one at that column and zero at the other free columns, which is the
    reduced-echelon nullspace basis.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [[to_fraction(v) for v in matrix[r]] + [to_fraction(rhs[r])] for r in range(rows)]
    if all(v.denominator == 1 for row in aug for v in row):
        return _solve_affine_int([[v.numerator for v in row] for row in aug], rows, cols)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if aug[k][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        pv = aug[r][c]
        if pv != 1:
            aug[r] = [v / pv if v else v for v in aug[r]]
        rr = aug[r]
        nz = [q for q in range(c, cols + 1) if rr[q]]
        for k in range(rows):
            rk = aug[k]
            if k != r and rk[c]:
                f = rk[c]
                for q in nz:
                    rk[q] -= f * rr[q]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for k in range(r, rows):
        if aug[k][cols]:
            return None
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    particular = [ZERO] * cols
    for k, c in enumerate(pivots):
        particular[c] = aug[k][cols]
    basis = []
    for f in free:
        vec = [ZERO] * cols
        vec[f] = ONE
        for k, c in enumerate(pivots):
            vec[c] = -aug[k][f]
        basis.append(vec)
    return particular, basis, free


def _solve_affine_int(aug: list[list[int]], rows: int, cols: int):
    # fraction-free Gauss-Jordan; each pivot row keeps an integer pivot
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if aug[k][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        rr = aug[r]
        p = rr[c]
        nz = [q for q in range(c, cols + 1) if rr[q]]
        for k in range(rows):
            rk = aug[k]
            if k != r and rk[c]:
                f = rk[c]
                for q in range(cols + 1):
                    rk[q] *= p
                for q in nz:
                    rk[q] -= f * rr[q]
                gg = 0
                for v in rk:
                    if v:
                        gg = gcd(gg, v)
                if gg > 1:
                    aug[k] = [v // gg for v in rk]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for k in range(r, rows):
        if aug[k][cols]:
            return None
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    particular = [ZERO] * cols
    for k, c in enumerate(pivots):
        particular[c] = Fraction(aug[k][cols], aug[k][c])
    basis = []
    for f in free:
        vec = [ZERO] * cols
        vec[f] = ONE
        for k, c in enumerate(pivots):
            vec[c] = Fraction(-aug[k][f], aug[k][c])
        basis.append(vec)
    return particular, basis, free


def rank(vectors: Sequence[Sequence]) -> int:
    rows = [[to_fraction(v) for v in row] for row in vectors]
    if not rows:
        return 0
    cols = len(rows[0])
    rk = 0
    for c in range(cols):
        piv = next((k for k in range(rk, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for k in range(rk + 1, len(rows)):
            if rows[k][c]:
                f = rows[k][c] / rows[rk][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[rk])]
        rk += 1
    return rk


def _invert(square: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(square)
    aug = [row[:] + [ONE if i == j else ZERO for j in range(m)] for i, row in enumerate(square)]
    for c in range(m):
        piv = next(k for k in range(c, m) if aug[k][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [v * inv for v in aug[c]]
        for k in range(m):
            if k != c and aug[k][c]:
                f = aug[k][c]
                aug[k] = [a - f * b for a, b in zip(aug[k], aug[c])]
    return [row[m:] for row in aug]


def _int_row(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in row:
        den = den * v.denominator // gcd(den, v.denominator)
    return [int(v * den) for v in row]


def _primitive(ray: Sequence[int]) -> tuple[int, ...]:
    gg = 0
    for v in ray:
        if v:
            gg = gcd(gg, v)
    if gg > 1:
        return tuple(v // gg for v in ray)
    return tuple(ray)


def enumerate_vertices(G: Sequence[Sequence], h: Sequence) -> list[tuple[Fraction, ...]]:
    """Vertices of the bounded polyhedron ``{t : G t >= h}``, sorted.

    Double description on the homogenized cone ``{(s, t) : G t - h s >= 0,
    s >= 0}`` with the combinatorial adjacency test. Rows and rays are
    scaled to primitive integer vectors, which leaves the cone unchanged and
    keeps the arithmetic exact. The recession cone must be trivial; an
    unbounded region raises.
    """
    m = len(G)
    k = len(G[0]) if m else 0
    hh = [to_fraction(v) for v in h]
    if k == 0:
        return [()] if all(v <= 0 for v in hh) else []
    rows = [[1] + [0] * k]
    rows += [_int_row([-hh[r]] + [to_fraction(v) for v in G[r]]) for r in range(m)]
    d = k + 1

    # greedy choice of d independent rows for the starting simplicial cone
    chosen: list[int] = []
    echelon: list[tuple[int, list[Fraction]]] = []
    for idx, row in enumerate(rows):
        vec = [Fraction(v) for v in row]
        for piv_col, erow in echelon:
            if vec[piv_col]:
                f = vec[piv_col] / erow[piv_col]
                vec = [a - f * b for a, b in zip(vec, erow)]
        col = next((c for c, v in enumerate(vec) if v), None)
        if col is None:
            continue
        echelon.append((col, vec))
        chosen.append(idx)
        if len(chosen) == d:
            break
    if len(chosen) < d:
        raise ValueError("constraint system has a nontrivial lineality space")

    inv = _invert([[Fraction(v) for v in rows[i]] for i in chosen])
    rays: list[tuple[tuple[int, ...], int]] = []
    for j in range(d):
        ray = _int_row([inv[r][j] for r in range(d)])
        zmask = 0
        for pos, idx in enumerate(chosen):
            if pos != j:
                zmask |= 1 << idx
        rays.append((_primitive(ray), zmask))

    chosen_set = set(chosen)
    for idx, row in enumerate(rows):
        if idx in chosen_set:
            continue
        bit = 1 << idx
        nzc = [c for c in range(d) if row[c]]
        pos, neg, keep = [], [], []
        for q, (ray, z) in enumerate(rays):
            val = 0
            for c in nzc:
                val += row[c] * ray[c]
            if val > 0:
                pos.append((q, val))
                keep.append((ray, z))
            elif val < 0:
                neg.append((q, val))
            else:
                keep.append((ray, z | bit))
        if not neg:
            rays = keep
            continue
        new = []
        masks = [z for _, z in rays]
        for ip, vp in pos:
            rp, zp = rays[ip]
            for iq, vn in neg:
                rn, zn = rays[iq]
                common = zp & zn
                if bin(common).count("1") < d - 2:
                    continue
                if any(
                    q != ip and q != iq and z & common == common
                    for q, z in enumerate(masks)
                ):
                    continue
                comb = [vp * a - vn * b for a, b in zip(rn, rp)]
                new.append((_primitive(comb), common | bit))
        rays = keep + new

    verts = set()
    recession = False
    for ray, _ in rays:
        s = ray[0]
        if s > 0:
            verts.add(tuple(Fraction(v, s) for v in ray[1:]))
        else:
            recession = True
    if verts and recession:
        raise ValueError("constraint system describes an unbounded region")
    return sorted(verts)
