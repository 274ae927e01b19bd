"""Degree-2 rational maps as pairs of binary quadratic forms.

A map phi = F/G is stored through the six coefficients of
F(X,Y) = f2 X^2 + f1 XY + f0 Y^2 and G(X,Y) = g2 X^2 + g1 XY + g0 Y^2,
so the point at infinity needs no special casing.  Conjugation, resultants,
content normalization and the per-prime good-reduction test all live here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Union

from .exactnum import (
    Element,
    INFINITY,
    QuadExt,
    _require_prime,
    valuation,
)

Coeffs = tuple[Element, Element, Element]


class DegenerateMapError(ValueError):
    """The two forms share a projective root (resultant zero)."""


def _as_element(x) -> Element:
    if isinstance(x, QuadExt):
        return x
    return Fraction(x)


def _extension_t(values) -> Optional[int]:
    t = None
    for v in values:
        if isinstance(v, QuadExt) and v.b != 0:
            if t is None:
                t = v.t
            elif t != v.t:
                raise ValueError("coefficients mix distinct quadratic extensions")
    return t


@dataclass(frozen=True)
class Moebius:
    """f(z) = (a z + b) / (c z + d) with ad - bc != 0, acting on P^1."""

    a: Element
    b: Element
    c: Element
    d: Element

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _as_element(getattr(self, name)))
        if self.det() == 0:
            raise ValueError("degenerate Moebius transformation (ad - bc = 0)")

    def det(self) -> Element:
        return self.a * self.d - self.b * self.c

    def compose(self, other: "Moebius") -> "Moebius":
        """Matrix product: (self o other)(z) = self(other(z))."""
        return Moebius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "Moebius":
        """Adjugate matrix; the same element of PGL2 as the true inverse."""
        return Moebius(self.d, -self.b, -self.c, self.a)

    @staticmethod
    def identity() -> "Moebius":
        return Moebius(1, 0, 0, 1)

    @staticmethod
    def translation(r) -> "Moebius":
        return Moebius(1, r, 0, 1)

    @staticmethod
    def scaling(u) -> "Moebius":
        return Moebius(u, 0, 0, 1)

    @staticmethod
    def inversion() -> "Moebius":
        return Moebius(0, 1, 1, 0)

    def __call__(self, z):
        """Apply to an affine point or INFINITY."""
        if z is INFINITY:
            if self.c == 0:
                return INFINITY
            return self.a / self.c
        w = self.c * z + self.d
        if w == 0:
            return INFINITY
        return (self.a * z + self.b) / w

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


class RatMap2:
    """phi = [F : G], a true degree-2 rational map (resultant nonzero)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = tuple(_as_element(c) for c in num)
        den = tuple(_as_element(c) for c in den)
        if len(num) != 3 or len(den) != 3:
            raise ValueError("each form needs exactly three coefficients")
        if all(c == 0 for c in num + den):
            raise ValueError("zero map")
        _extension_t(num + den)  # reject mixed extensions early
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if resultant(self) == 0:
            raise DegenerateMapError(
                "forms share a projective root: not a degree-2 map"
            )

    def __setattr__(self, *_):
        raise AttributeError("RatMap2 is immutable")

    f2 = property(lambda self: self.num[0])
    f1 = property(lambda self: self.num[1])
    f0 = property(lambda self: self.num[2])
    g2 = property(lambda self: self.den[0])
    g1 = property(lambda self: self.den[1])
    g0 = property(lambda self: self.den[2])

    @staticmethod
    def from_affine(num_coeffs, den_coeffs) -> "RatMap2":
        """Build from ascending affine coefficient lists of degree <= 2."""

        def pad(cs):
            cs = list(cs) + [0] * (3 - len(cs))
            if len(cs) != 3:
                raise ValueError("affine degree exceeds 2")
            return (cs[2], cs[1], cs[0])

        return RatMap2(pad(num_coeffs), pad(den_coeffs))

    def affine_num(self) -> list[Element]:
        return [self.f0, self.f1, self.f2]

    def affine_den(self) -> list[Element]:
        return [self.g0, self.g1, self.g2]

    def extension_t(self) -> Optional[int]:
        return _extension_t(self.num + self.den)

    def __eq__(self, other) -> bool:
        """Canonical equality: maps agree up to scaling both forms."""
        if not isinstance(other, RatMap2):
            return NotImplemented
        return normalize_content(self).coefficients() == normalize_content(
            other
        ).coefficients()

    def __hash__(self):
        return hash(normalize_content(self).coefficients())

    def coefficients(self) -> tuple[Element, ...]:
        return self.num + self.den

    def __repr__(self):
        return f"RatMap2({self.num}, {self.den})"

    def __str__(self):
        from .mapexpr import format_map

        return format_map(self)


def resultant(m: RatMap2) -> Element:
    """Resultant of the two quadratic forms: the 4x4 Sylvester determinant
    of (F, F shifted, G, G shifted), expanded along its first two rows
    (division free, exact for any field coefficients).

    Zero exactly when F and G share a projective root.  For the shape
    (z^2 + a z) / (b z + 1) this evaluates to 1 - a b.
    """
    f2, f1, f0 = m.num
    g2, g1, g0 = m.den
    # rows: (f2 f1 f0 0), (0 f2 f1 f0), (g2 g1 g0 0), (0 g2 g1 g0)
    m01 = f2 * f2
    m02 = f2 * f1
    m03 = f2 * f0
    m12 = f1 * f1 - f2 * f0
    m13 = f1 * f0
    m23 = f0 * f0
    n01 = g2 * g2
    n02 = g2 * g1
    n03 = g2 * g0
    n12 = g1 * g1 - g2 * g0
    n13 = g1 * g0
    n23 = g0 * g0
    return m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01


def conjugate(m: RatMap2, f: Moebius) -> RatMap2:
    """phi^f = f^(-1) o phi o f as forms, without content normalization.

    With M the matrix of f, the new forms are
    (d*(F o M) - b*(G o M), -c*(F o M) + a*(G o M)); the raw resultant picks
    up the factor det(f)^6.
    """
    a, b, c, d = f.a, f.b, f.c, f.d

    def compose_form(c2, c1, c0):
        # coefficients of the form evaluated at (aX + bY, cX + dY)
        return (
            c2 * a * a + c1 * a * c + c0 * c * c,
            2 * c2 * a * b + c1 * (a * d + b * c) + 2 * c0 * c * d,
            c2 * b * b + c1 * b * d + c0 * d * d,
        )

    FM = compose_form(*m.num)
    GM = compose_form(*m.den)
    new_num = tuple(d * x - b * y for x, y in zip(FM, GM))
    new_den = tuple(-c * x + a * y for x, y in zip(FM, GM))
    return RatMap2(new_num, new_den)


def _rational_parts(coeffs) -> list[Fraction]:
    parts = []
    for c in coeffs:
        if isinstance(c, QuadExt):
            parts.extend((c.a, c.b))
        else:
            parts.append(Fraction(c))
    return parts


def normalize_content_with_scale(m: RatMap2) -> tuple[RatMap2, Element]:
    """Canonical integral model and the scale s with old = s * new.

    Scales both forms so all coefficients are integral with no common prime
    factor (over Q(sqrt(t)): integer components, no common rational prime,
    and sqrt(t) itself divided out when it divides every coefficient), then
    fixes the sign so the first nonzero coefficient is positive (positive
    rational part first, else positive sqrt part).  Scaling both forms by s
    multiplies the resultant by s^4.
    """
    coeffs = list(m.coefficients())
    t = m.extension_t()
    scale: Element = Fraction(1)

    den = lcm(*(p.denominator for p in _rational_parts(coeffs)))
    if den != 1:
        coeffs = [c * den for c in coeffs]
        scale = scale / den
    g = gcd(*(p.numerator for p in _rational_parts(coeffs)))
    if g > 1:
        coeffs = [c / g for c in coeffs]
        scale = scale * g
    if t is not None and abs(t) != 1:
        # divide out sqrt(t) while it divides every coefficient:
        # (a + b*sqrt(t)) / sqrt(t) = b + (a/t)*sqrt(t), integral iff t | a;
        # sqrt(-1) is a unit and is never extracted
        while True:
            parts = [
                (c.a, c.b) if isinstance(c, QuadExt) else (Fraction(c), Fraction(0))
                for c in coeffs
            ]
            if not all(a.denominator == 1 and a.numerator % t == 0 for a, _ in parts):
                break
            coeffs = [QuadExt._make(b, a / t, t) for a, b in parts]
            scale = scale * QuadExt._raw(Fraction(0), Fraction(1), t)
            g = gcd(*(p.numerator for p in _rational_parts(coeffs)))
            if g > 1:
                coeffs = [c / g for c in coeffs]
                scale = scale * g
    for c in coeffs:
        if c == 0:
            continue
        if isinstance(c, QuadExt):
            negative = c.a < 0 or (c.a == 0 and c.b < 0)
        else:
            negative = c < 0
        if negative:
            coeffs = [-x for x in coeffs]
            scale = -scale
        break
    return RatMap2(coeffs[:3], coeffs[3:]), scale


def normalize_content(m: RatMap2) -> RatMap2:
    """Canonical integral representative of m (see normalize_content_with_scale)."""
    return normalize_content_with_scale(m)[0]


def good_reduction_at(m: RatMap2, p: int) -> bool:
    """True iff the content-normalized resultant is a p-adic unit."""
    _require_prime(p)
    return valuation(resultant(normalize_content(m)), p) == 0


def _gf_trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a = _gf_trim([c % p for c in a])
    b = _gf_trim([c % p for c in b])
    while b:
        inv = pow(b[-1], -1, p)
        r = list(a)
        while len(r) >= len(b):
            lead = (r[-1] * inv) % p
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - lead * c) % p
            r = _gf_trim(r)
        a, b = b, r
    return a


def degree_of_reduction(m: RatMap2, p: int) -> int:
    """Degree of the reduction of m mod p, in {-1, 0, 1, 2}.

    Reduces the content-normalized integer coefficients mod p and cancels the
    common factor of the two reduced binary forms; -1 encodes one whole form
    vanishing mod p.  Only maps with rational coefficients reduce.
    """
    _require_prime(p)
    mm = normalize_content(m)
    if mm.extension_t() is not None:
        raise ValueError("reduction mod p is only defined for maps over Q")
    fbar = [int(c) % p for c in mm.affine_num()]
    gbar = [int(c) % p for c in mm.affine_den()]
    if not _gf_trim(list(fbar)) or not _gf_trim(list(gbar)):
        return -1
    df, dg = len(_gf_trim(list(fbar))) - 1, len(_gf_trim(list(gbar))) - 1
    # multiplicity of Y in the reduced forms is 2 - affine degree
    y_common = min(2 - df, 2 - dg)
    h = _gf_gcd(fbar, gbar, p)
    return 2 - y_common - (len(h) - 1)
