"""Small exact-polynomial helpers shared across the library.

Polynomials are plain lists of field elements in ascending degree order
(index = power).  All arithmetic is exact over Fraction / QuadExt entries.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import Element, QuadExt, factor_integer, sqrt_exact, sqrt_rational

ZERO = Fraction(0)
ONE = Fraction(1)


def trim(cs: Sequence[Element]) -> list[Element]:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def degree(cs: Sequence[Element]) -> int:
    """Degree of the trimmed polynomial; -1 for the zero polynomial."""
    return len(trim(cs)) - 1


def padd(p: Sequence[Element], q: Sequence[Element]) -> list[Element]:
    n = max(len(p), len(q))
    return [
        (p[i] if i < len(p) else ZERO) + (q[i] if i < len(q) else ZERO)
        for i in range(n)
    ]


def pneg(p: Sequence[Element]) -> list[Element]:
    return [-c for c in p]


def psub(p: Sequence[Element], q: Sequence[Element]) -> list[Element]:
    return padd(p, pneg(q))


def pscale(p: Sequence[Element], s: Element) -> list[Element]:
    return [c * s for c in p]


def pmul(p: Sequence[Element], q: Sequence[Element]) -> list[Element]:
    if not p or not q:
        return []
    out: list[Element] = [ZERO] * (len(p) + len(q) - 1)
    for i, pi in enumerate(p):
        if pi == 0:
            continue
        for j, qj in enumerate(q):
            out[i + j] = out[i + j] + pi * qj
    return out


def pderiv(p: Sequence[Element]) -> list[Element]:
    return [i * p[i] for i in range(1, len(p))]


def peval(p: Sequence[Element], x: Element) -> Element:
    acc: Element = ZERO
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def deflate(p: Sequence[Element], root: Element) -> list[Element]:
    """Exact synthetic division of p by (z - root); p(root) must be 0."""
    cs = trim(p)
    out: list[Element] = [ZERO] * (len(cs) - 1)
    acc: Element = ZERO
    for i in range(len(cs) - 1, 0, -1):
        acc = acc * root + cs[i]
        out[i - 1] = acc
    if acc * root + cs[0] != 0:
        raise ValueError("deflate: not a root")
    return out


def det(rows: list[list[Element]]) -> Element:
    """Exact determinant by Gaussian elimination with row swaps."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        pv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] == 0:
                continue
            factor = m[r][col] / pv
            m[r][col] = ZERO
            for c in range(col + 1, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    out: Element = ONE if sign > 0 else -ONE
    for i in range(n):
        out = out * m[i][i]
    return out


def sylvester(p: Sequence[Element], q: Sequence[Element], m: int, n: int) -> list[list[Element]]:
    """(m+n) x (m+n) Sylvester matrix for formal degrees m = deg p, n = deg q.

    Coefficients beyond a polynomial's length count as zero, so a formal
    degree higher than the true degree is allowed.
    """

    def coeff(poly, k):
        return poly[k] if 0 <= k < len(poly) else ZERO

    size = m + n
    rows = []
    for i in range(n):  # rows of p
        rows.append([coeff(p, m - (c - i)) for c in range(size)])
    for i in range(m):  # rows of q
        rows.append([coeff(q, n - (c - i)) for c in range(size)])
    return rows


def resultant_poly(p: Sequence[Element], q: Sequence[Element], m: int, n: int) -> Element:
    return det(sylvester(p, q, m, n))


def interpolate(points: list[tuple[Element, Element]]) -> list[Element]:
    """Exact Lagrange interpolation through distinct nodes; ascending coeffs."""
    out: list[Element] = [ZERO] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis: list[Element] = [ONE]
        denom: Element = ONE
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = pmul(basis, [-xj, ONE])
            denom = denom * (xi - xj)
        scale = yi / denom
        for k, c in enumerate(basis):
            out[k] = out[k] + c * scale
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor_integer(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(p: Sequence[Element]) -> list[tuple[Fraction, int]]:
    """All rational roots of a Fraction-coefficient polynomial, with multiplicity."""
    cs = trim(p)
    if len(cs) <= 1:
        return []
    roots: list[tuple[Fraction, int]] = []
    mult0 = 0
    while cs and cs[0] == 0:
        cs = cs[1:]
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if len(cs) <= 1:
        return roots
    from math import lcm

    den = lcm(*(Fraction(c).denominator for c in cs))
    ints = [int(Fraction(c) * den) for c in cs]
    lead, const = ints[-1], ints[0]
    candidates = set()
    for pn in _divisors(abs(const)):
        for qd in _divisors(abs(lead)):
            candidates.add(Fraction(pn, qd))
            candidates.add(Fraction(-pn, qd))
    for cand in sorted(candidates):
        if peval(cs, cand) == 0:
            mult = 0
            while peval(cs, cand) == 0 and len(cs) > 1:
                cs = deflate(cs, cand)
                mult += 1
            roots.append((cand, mult))
    return sorted(roots)


def quadratic_roots(c0: Fraction, c1: Fraction, c2: Fraction) -> Optional[tuple[Element, Element]]:
    """Roots of c2 z^2 + c1 z + c0 over Q or one quadratic extension.

    Returns None when c2 = 0 (not a quadratic).  Conjugate irrational roots
    come back as QuadExt values over Q(sqrt(t)) with t the square-free part
    of the discriminant.
    """
    if c2 == 0:
        return None
    disc = c1 * c1 - 4 * c2 * c0
    if disc >= 0 and (r := sqrt_rational(disc)) is not None:
        return ((-c1 + r) / (2 * c2), (-c1 - r) / (2 * c2))
    s = sqrt_exact(disc)
    return ((-c1 + s) / (2 * c2), (-c1 - s) / (2 * c2))
