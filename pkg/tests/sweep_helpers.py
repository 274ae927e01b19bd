"""Vectorized conjugate sweeps used by the acceptance suite.

Entries of Q(sqrt(p)) are encoded as int64 pairs (x, y) = x + y*sqrt(p).
Everything stays in exact integer arithmetic; valuations come from the
identity val(Res(primitive conjugate)) = val(Res(m)) + 6*val(det f)
- 4*min(coefficient valuations), doubled throughout so half-integers stay
integral ("val2" = twice the valuation).
"""

from fractions import Fraction
from itertools import product

import numpy as np

from grd.exactnum import QuadExt, val_p, valuation
from grd.ratmap import Moebius, RatMap2, conjugate, normalize_content, resultant

BIG = 10**6


def mixed_entries(height=3, mixed_height=1):
    """Entry set: rationals and sqrt(p)-multiples up to `height`, plus all
    fully mixed u + v*sqrt(p) with |u|, |v| <= mixed_height."""
    ents = {(u, 0) for u in range(-height, height + 1)}
    ents |= {(0, v) for v in range(-height, height + 1) if v != 0}
    ents |= {
        (u, v)
        for u in range(-mixed_height, mixed_height + 1)
        for v in range(-mixed_height, mixed_height + 1)
        if u != 0 and v != 0
    }
    return sorted(ents)


def _v2p(x, p):
    """Twice the p-adic valuation of each entry (BIG for zero), elementwise."""
    x = np.abs(x)
    out = np.full(x.shape, BIG, dtype=np.int64)
    live = x != 0
    v = np.zeros(x.shape, dtype=np.int64)
    work = x.copy()
    while True:
        div = live & (work % p == 0)
        if not div.any():
            break
        work[div] //= p
        v[div] += 1
    out[live] = 2 * v[live]
    return out


def sweep_conjugate_val2(m: RatMap2, p: int, entries) -> np.ndarray:
    """val2 of the resultant of every content-normalized conjugate of m by
    matrices with entries drawn from `entries` (det != 0 only)."""
    f2, f1, f0 = (int(c) for c in m.num)
    g2, g1, g0 = (int(c) for c in m.den)
    base = int(2 * val_p(resultant(m), p))

    ex = np.array([e[0] for e in entries], dtype=np.int64)
    ey = np.array([e[1] for e in entries], dtype=np.int64)
    n = len(entries)
    ia, ib, ic, id_ = np.meshgrid(
        np.arange(n), np.arange(n), np.arange(n), np.arange(n), indexing="ij"
    )
    ax, ay = ex[ia.ravel()], ey[ia.ravel()]
    bx, by = ex[ib.ravel()], ey[ib.ravel()]
    cx, cy = ex[ic.ravel()], ey[ic.ravel()]
    dx, dy = ex[id_.ravel()], ey[id_.ravel()]

    def pmulx(x1, y1, x2, y2):
        return x1 * x2 + p * y1 * y2

    def pmuly(x1, y1, x2, y2):
        return x1 * y2 + y1 * x2

    detx = pmulx(ax, ay, dx, dy) - pmulx(bx, by, cx, cy)
    dety = pmuly(ax, ay, dx, dy) - pmuly(bx, by, cx, cy)
    live = (detx != 0) | (dety != 0)
    ax, ay, bx, by = ax[live], ay[live], bx[live], by[live]
    cx, cy, dx, dy = cx[live], cy[live], dx[live], dy[live]
    detx, dety = detx[live], dety[live]

    def pair_prod(x1, y1, x2, y2):
        return pmulx(x1, y1, x2, y2), pmuly(x1, y1, x2, y2)

    aa = pair_prod(ax, ay, ax, ay)
    ac = pair_prod(ax, ay, cx, cy)
    cc = pair_prod(cx, cy, cx, cy)
    ab = pair_prod(ax, ay, bx, by)
    ad = pair_prod(ax, ay, dx, dy)
    bc = pair_prod(bx, by, cx, cy)
    adbc = (ad[0] + bc[0], ad[1] + bc[1])
    cd = pair_prod(cx, cy, dx, dy)
    bb = pair_prod(bx, by, bx, by)
    bd = pair_prod(bx, by, dx, dy)
    dd = pair_prod(dx, dy, dx, dy)

    def compose(c2, c1, c0):
        return (
            (c2 * aa[0] + c1 * ac[0] + c0 * cc[0], c2 * aa[1] + c1 * ac[1] + c0 * cc[1]),
            (
                2 * c2 * ab[0] + c1 * adbc[0] + 2 * c0 * cd[0],
                2 * c2 * ab[1] + c1 * adbc[1] + 2 * c0 * cd[1],
            ),
            (c2 * bb[0] + c1 * bd[0] + c0 * dd[0], c2 * bb[1] + c1 * bd[1] + c0 * dd[1]),
        )

    FM = compose(f2, f1, f0)
    GM = compose(g2, g1, g0)

    # new numerator: d*FM - b*GM ; new denominator: -c*FM + a*GM
    vals = []
    for i in range(3):
        nx = pmulx(dx, dy, *FM[i]) - pmulx(bx, by, *GM[i])
        ny = pmuly(dx, dy, *FM[i]) - pmuly(bx, by, *GM[i])
        vals.append(np.minimum(_v2p(nx, p), _v2p(ny, p) + 1))
        mx = -pmulx(cx, cy, *FM[i]) + pmulx(ax, ay, *GM[i])
        my = -pmuly(cx, cy, *FM[i]) + pmuly(ax, ay, *GM[i])
        vals.append(np.minimum(_v2p(mx, p), _v2p(my, p) + 1))
    coeff_val2 = np.minimum.reduce(vals)
    det_val2 = np.minimum(_v2p(detx, p), _v2p(dety, p) + 1)
    return base + 6 * det_val2 - 4 * coeff_val2


def exact_conjugate_val2(m: RatMap2, p: int, entry_matrix) -> int:
    """Exact reference for one matrix of (u, v) pairs: conjugate with QuadExt
    arithmetic, normalize, and return twice the resultant valuation."""

    def elem(uv):
        u, v = uv
        return Fraction(u) if v == 0 else QuadExt(u, v, p)

    f = Moebius(*(elem(e) for e in entry_matrix))
    prim = normalize_content(conjugate(m, f))
    return int(2 * valuation(resultant(prim), p))


def random_bad_map(rng, bound=8):
    """Random integer-coefficient map with a non-integral moduli point,
    together with its smallest witness prime."""
    from grd.exactnum import factor_integer
    from grd.invariants import sigma_invariants
    from grd.ratmap import DegenerateMapError

    while True:
        coeffs = [Fraction(rng.randint(-bound, bound)) for _ in range(6)]
        try:
            m = normalize_content(RatMap2(coeffs[:3], coeffs[3:]))
        except (DegenerateMapError, ValueError):
            continue
        s = sigma_invariants(m)
        dens = s.sigma1.denominator * s.sigma2.denominator
        if dens == 1:
            continue
        p = min(q for q, _ in factor_integer(dens))
        return m, p
