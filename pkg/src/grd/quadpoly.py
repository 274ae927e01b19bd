"""Quadratic polynomials: normalization to z^2 + c and good reduction over Q.

Every quadratic polynomial is affinely conjugate to a unique z^2 + c; its
moduli point is (2, 4c), so potential good reduction means 4c is an integer.
For c = k/4 a model with good reduction defined over Q itself exists exactly
when k = 0 or 1 mod 4; otherwise only a quadratic extension works.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import Element, extension_of, factor_integer, sqrt_exact
from .pgr import PgrCertificate
from .ratmap import Moebius, RatMap2, resultant


@dataclass(frozen=True)
class QuadraticPgr:
    """Verdict of the 4c integrality test with the failing primes."""

    is_pgr: bool
    failing_primes: tuple[int, ...]


@dataclass(frozen=True)
class K4Verdict:
    """Outcome of the mod-4 test for z^2 + k/4 over Q.

    good_over_q carries the integers (b, c) with z^2 + k/4 conjugate over Q
    to z^2 + b z + c, which has unit resultant at every prime; when k = 2, 3
    mod 4 no such pair exists and a quadratic extension is required (the map
    still has potential good reduction since 4c = k is integral).
    """

    k: int
    requires_extension: bool
    b: Optional[int] = None
    c: Optional[int] = None


def normalize_quadratic(A: Fraction, B: Fraction, C: Fraction) -> tuple[Fraction, Moebius]:
    """Unique c with A z^2 + B z + C conjugate to z^2 + c, plus the affine
    conjugator h(z) = z/A - B/(2A) realizing it."""
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    if A == 0:
        raise ValueError("not a quadratic: leading coefficient is zero")
    c = A * C - B * B / 4 + B / 2
    h = Moebius(Fraction(1, 1) / A, -B / (2 * A), 0, 1)
    return c, h


def pgr_quadratic(c: Fraction) -> QuadraticPgr:
    """Potential good reduction of z^2 + c: true iff 4c is an integer."""
    c4 = 4 * Fraction(c)
    if c4.denominator == 1:
        return QuadraticPgr(True, ())
    return QuadraticPgr(
        False, tuple(p for p, _ in factor_integer(c4.denominator))
    )


def conjugate_to_good_quadratic(c: Fraction) -> PgrCertificate:
    """Good-reduction model for z^2 + c with 4c integral.

    Conjugating by f(z) = z + alpha, alpha = (1 + sqrt(1 - 4c))/2 the fixed
    point with the plus sign, gives z^2 + (1 + sqrt(1 - 4c)) z, whose
    resultant is exactly 1; the extension is Q(sqrt(1 - 4c)) when needed.
    """
    c = Fraction(c)
    verdict = pgr_quadratic(c)
    if not verdict.is_pgr:
        raise ValueError(f"4c is not integral (bad primes {verdict.failing_primes})")
    root = sqrt_exact(1 - 4 * c)
    alpha = (1 + root) / 2
    f = Moebius(1, alpha, 0, 1)
    source = RatMap2((1, 0, c), (0, 0, 1))
    model = RatMap2((1, 1 + root, 0), (0, 0, 1))
    res = resultant(model)
    return PgrCertificate(
        conjugated_from=source,
        f=f,
        g=Moebius.identity(),
        c=Fraction(1),
        result=model,
        extension_t=extension_of(root),
        res_before=resultant(source),
        res_after=res,
        content=Fraction(1),
        primes=(),
        intermediates={"alpha": alpha, "fixed_point_sign": "+"},
    )


def k4_criterion(k: int) -> K4Verdict:
    """Good reduction over Q for z^2 + k/4: possible iff k = 0, 1 mod 4.

    k = 0 mod 4 gives z^2 + k/4 itself; k = 1 mod 4 gives z^2 + z + (k-1)/4
    via z -> z + 1/2.  The conjugates have unit resultant everywhere.
    """
    k = int(k)
    r = k % 4
    if r == 0:
        return K4Verdict(k=k, requires_extension=False, b=0, c=k // 4)
    if r == 1:
        return K4Verdict(k=k, requires_extension=False, b=1, c=(k - 1) // 4)
    return K4Verdict(k=k, requires_extension=True)


def search_good_model_at_2(k: int, height: int = 20) -> Optional[tuple[int, int, int, int]]:
    """Brute-force hunt for an integer conjugator giving good reduction at 2.

    Sweeps every f = (a z + b)/(c z + d) with integer entries of absolute
    value <= height and det != 0, conjugates z^2 + k/4, and tests whether the
    content-normalized resultant is odd.  Returns a witness matrix or None.

    The sweep works on 2-adic valuations only: with N, D the integer
    coefficient forms of 4*(phi^f), one has
    v2(Res(primitive)) = 8 + 6*v2(det f) - 4*v2(content(N, D))
    since Res(z^2 + k/4 as forms) = 1, conjugation scales the resultant by
    det^6, and scaling both forms by s multiplies it by s^4 (s = 4 gives
    4^4 = 2^8).  Exactness is preserved: all arithmetic is int64 on
    desk-scale integers.
    """
    import numpy as np

    H = int(height)
    side = np.arange(-H, H + 1, dtype=np.int64)
    kk = np.int64(k)

    def v2(x):
        # 2-adic valuation elementwise; x must be nonzero where used
        low = x & -x
        return np.log2(low.astype(np.float64)).astype(np.int64)

    b, c, d = np.meshgrid(side, side, side, indexing="ij")
    b, c, d = b.ravel(), c.ravel(), d.ravel()
    for a_val in side:
        a = np.full_like(b, a_val)
        det = a * d - b * c
        live = det != 0
        if not live.any():
            continue
        aa, bb, cc, dd, dt = a[live], b[live], c[live], d[live], det[live]
        n2 = 4 * aa * aa * dd + kk * cc * cc * dd - 4 * bb * cc * cc
        n1 = 8 * aa * bb * dd + 2 * kk * cc * dd * dd - 8 * bb * cc * dd
        n0 = 4 * bb * bb * dd + kk * dd * dd * dd - 4 * bb * dd * dd
        m2 = -4 * aa * aa * cc - kk * cc * cc * cc + 4 * aa * cc * cc
        m1 = -8 * aa * bb * cc - 2 * kk * cc * cc * dd + 8 * aa * cc * dd
        m0 = -4 * bb * bb * cc - kk * cc * dd * dd + 4 * aa * dd * dd
        merged = n2 | n1 | n0 | m2 | m1 | m0
        good = 8 + 6 * v2(dt) == 4 * v2(merged)
        if good.any():
            i = int(np.argmax(good))
            return (int(aa[i]), int(bb[i]), int(cc[i]), int(dd[i]))
    return None
