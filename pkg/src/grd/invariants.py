"""Fixed points, multipliers, moduli coordinates and normal forms.

The moduli point of a degree-2 map is the triple of elementary symmetric
functions (sigma1, sigma2, sigma3) of its three fixed-point multipliers.
sigma1 and sigma2 coordinatize the moduli space; sigma3 = sigma1 - 2 always.
The sigmas are computed through an eliminant of the fixed-point cubic, so no
splitting field is ever required.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .exactnum import Element, INFINITY, QuadExt, sqrt_exact, val_p, valuation
from .polys import (
    degree,
    deflate,
    interpolate,
    pderiv,
    peval,
    pmul,
    psub,
    quadratic_roots,
    rational_roots,
    resultant_poly,
    trim,
)
from .ratmap import Moebius, RatMap2, conjugate, normalize_content, resultant

Point = Union[Element, float]  # affine value or INFINITY


class NotConstructibleError(ValueError):
    """Fixed points are not expressible over Q or a single quadratic extension."""


@dataclass(frozen=True)
class MultiplierSpectrum:
    """Moduli point (sigma1, sigma2, sigma3); explicit multipliers when the
    multiplier cubic splits over Q or a single quadratic extension."""

    sigma1: Fraction
    sigma2: Fraction
    sigma3: Fraction
    multipliers: Optional[tuple[Element, Element, Element]] = None

    def __post_init__(self):
        if self.sigma1 - self.sigma3 != 2:
            raise ValueError("inconsistent spectrum: sigma1 - sigma3 != 2")
        if self.multipliers is not None:
            l1, l2, l3 = self.multipliers
            ok = (
                l1 + l2 + l3 == self.sigma1
                and l1 * l2 + l1 * l3 + l2 * l3 == self.sigma2
                and l1 * l2 * l3 == self.sigma3
            )
            if not ok:
                raise ValueError("multipliers do not match their symmetric functions")


@dataclass(frozen=True)
class NormalForm:
    """A conjugacy-normal model together with the conjugator reaching it.

    kind "A": (z^2 + lambda1 z) / (lambda2 z + 1), fixed points at 0 and
    infinity, resultant 1 - lambda1*lambda2.
    kind "B": z + s + 1/z with s = sqrt_term, s^2 = 1 - lambda3; used when
    every choice of fixed-point pair has multiplier product 1.
    """

    kind: str
    conjugator: Moebius
    model: RatMap2
    extension_t: Optional[int] = None
    lambda1: Optional[Element] = None
    lambda2: Optional[Element] = None
    lambda3: Optional[Element] = None
    sqrt_term: Optional[Element] = None


def fixed_point_form(m: RatMap2) -> tuple[Element, Element, Element, Element]:
    """Binary cubic X*G - Y*F whose projective roots are the fixed points.

    Coefficients are returned for (X^3, X^2 Y, X Y^2, Y^3); infinity is a
    fixed point exactly when the X^3 coefficient vanishes.
    """
    phi = (m.g2, m.g1 - m.f2, m.g0 - m.f1, -m.f0)
    if all(c == 0 for c in phi):
        raise ValueError("fixed-point form vanishes: degenerate input")
    return phi


def _wronskian(m: RatMap2) -> list[Element]:
    """W = F'G - FG' in affine coordinates (degree <= 2); phi' = W / G^2."""
    F = m.affine_num()
    G = m.affine_den()
    return trim(psub(pmul(pderiv(F), G), pmul(F, pderiv(G))))


def multiplier_at(m: RatMap2, alpha: Point) -> Element:
    """Derivative of the map at a fixed point; coordinate independent.

    The point at infinity is handled by conjugating with 1/z rather than by a
    limit formula.  Raises if alpha is not fixed.
    """
    if alpha is INFINITY:
        if m.g2 != 0:
            raise ValueError("infinity is not a fixed point of this map")
        return multiplier_at(conjugate(m, Moebius.inversion()), Fraction(0))
    F = m.affine_num()
    G = m.affine_den()
    g = peval(G, alpha)
    if g == 0:
        raise ValueError("fixed point coincides with a pole: degenerate map")
    if peval(F, alpha) != alpha * g:
        raise ValueError(f"{alpha} is not a fixed point")
    return peval(_wronskian(m), alpha) / (g * g)


def lambda3_from_pair(lambda1: Element, lambda2: Element) -> Element:
    """Third multiplier from the other two: (2 - l1 - l2) / (1 - l1*l2)."""
    if lambda1 * lambda2 == 1:
        raise ValueError("lambda1*lambda2 = 1: the third multiplier is unconstrained")
    return (2 - lambda1 - lambda2) / (1 - lambda1 * lambda2)


def _multiplier_cubic(m: RatMap2) -> list[Fraction]:
    """Monic cubic in x whose roots (with multiplicity) are the multipliers.

    Requires a model with no fixed point at infinity: then the fixed-point
    cubic P has exact degree 3, and eliminating z from P(z) = 0 and
    x*G(z)^2 - W(z) = 0 gives a degree-3 polynomial in x proportional to
    prod (x - multiplier).  The leading coefficient is a square of the
    nonzero eliminant of P and G, so monic normalization is exact.
    """
    phi3, phi2, phi1, phi0 = fixed_point_form(m)
    if phi3 == 0:
        raise ValueError("model has a fixed point at infinity")
    P = [phi0, phi1, phi2, phi3]
    G2 = pmul(m.affine_den(), m.affine_den())
    W = _wronskian(m)
    nodes = [Fraction(k) for k in (0, 1, -1, 2)]
    samples = []
    for x in nodes:
        Q = psub([x * c for c in G2], W)
        Q = list(Q) + [Fraction(0)] * (5 - len(Q))
        samples.append((x, resultant_poly(P, Q, 3, 4)))
    cubic = interpolate(samples)
    cubic = list(cubic) + [Fraction(0)] * (4 - len(cubic))
    lead = cubic[3]
    if lead == 0:
        raise ValueError("multiplier eliminant degenerated")
    return [c / lead for c in cubic]


_FALLBACK_LIMIT = 8


def _model_without_infinity(m: RatMap2) -> RatMap2:
    """Conjugate of m (same moduli point) with no fixed point at infinity.

    Uses f(z) = r + 1/z, which moves infinity onto r; r with r not fixed by m
    exists among 0..3 since there are at most three fixed points.
    """
    if m.g2 != 0:
        return m
    for r in range(_FALLBACK_LIMIT):
        cand = conjugate(m, Moebius(r, 1, 1, 0))
        if cand.g2 != 0:
            return cand
    raise ValueError("could not move fixed points off infinity")  # pragma: no cover


def sigma_invariants(m: RatMap2) -> MultiplierSpectrum:
    """Moduli point of m, computed without root finding.

    Conjugation invariant.  Explicit multipliers are attached whenever the
    multiplier cubic splits over Q or one quadratic extension.
    """
    if m.extension_t() is not None:
        raise ValueError("sigma invariants are implemented for maps over Q")
    cubic = _multiplier_cubic(_model_without_infinity(m))
    c0, c1, c2, _ = cubic
    sigma1, sigma2, sigma3 = -c2, c1, -c0
    if sigma1 - sigma3 != 2:
        raise ValueError("eliminant violated sigma1 = sigma3 + 2")  # pragma: no cover
    multipliers = _split_cubic(cubic)
    return MultiplierSpectrum(sigma1, sigma2, sigma3, multipliers)


def _split_cubic(cubic: list[Fraction]) -> Optional[tuple[Element, Element, Element]]:
    """Roots of a monic cubic over Q or one quadratic extension, else None."""
    roots: list[Element] = []
    rest = list(cubic)
    for r, mult in rational_roots(rest):
        roots.extend([r] * mult)
        for _ in range(mult):
            rest = deflate(rest, r)
    if len(roots) == 3:
        return tuple(sorted(roots))  # type: ignore[return-value]
    if len(roots) == 1:
        pair = quadratic_roots(rest[0], rest[1], rest[2])
        if pair is None:  # pragma: no cover
            return None
        return (roots[0], pair[0], pair[1])
    return None


def is_integral_point(s: MultiplierSpectrum, p: Optional[int] = None) -> bool:
    """Integrality of the moduli point; sigma3 needs no separate check."""
    if p is not None:
        return val_p(s.sigma1, p) >= 0 and val_p(s.sigma2, p) >= 0
    return s.sigma1.denominator == 1 and s.sigma2.denominator == 1


def _point_key(alpha: Point):
    """Deterministic order on fixed points: lexicographic on projective
    coordinates [X:Y] (so [0:1] < [1:0] < [1:1] < [2:1]); points needing an
    extension sort after all rational ones."""
    if alpha is INFINITY:
        return (0, Fraction(1), Fraction(0))
    if isinstance(alpha, QuadExt):
        return (1, alpha.a, alpha.b)
    return (0, Fraction(alpha), Fraction(1))


def fixed_points(m: RatMap2) -> list[tuple[Point, int]]:
    """Distinct fixed points with multiplicities, over Q or one quadratic
    extension; raises NotConstructibleError if the fixed-point cubic has an
    irreducible cubic factor."""
    phi3, phi2, phi1, phi0 = fixed_point_form(m)
    P = trim([phi0, phi1, phi2, phi3])
    points: list[tuple[Point, int]] = []
    inf_mult = 4 - len(P) if len(P) < 4 else 0
    if inf_mult:
        points.append((INFINITY, inf_mult))
    rest = list(P)
    for r, mult in rational_roots(rest):
        points.append((r, mult))
        for _ in range(mult):
            rest = deflate(rest, r)
    if degree(rest) >= 3:
        raise NotConstructibleError(
            "fixed points generate a cubic extension of Q"
        )
    if degree(rest) == 2:
        pair = quadratic_roots(rest[0], rest[1], rest[2])
        points.append((pair[0], 1))
        points.append((pair[1], 1))
    elif degree(rest) == 1:  # pragma: no cover
        points.append((-rest[0] / rest[1], 1))
    return sorted(points, key=lambda pm: _point_key(pm[0]))


def _pair_conjugator(alpha1: Point, alpha2: Point) -> Moebius:
    """f with f(0) = alpha1 and f(infinity) = alpha2, so that the conjugated
    map fixes 0 and infinity."""
    if alpha1 is INFINITY:
        return Moebius(alpha2, 1, 1, 0)
    if alpha2 is INFINITY:
        return Moebius(1, alpha1, 0, 1)
    return Moebius(alpha2, alpha1, 1, 1)


def _form_a_from_pair(m: RatMap2, alpha1: Point, alpha2: Point) -> NormalForm:
    f = _pair_conjugator(alpha1, alpha2)
    psi = conjugate(m, f)
    if psi.f0 != 0 or psi.g2 != 0:  # pragma: no cover
        raise ValueError("pair conjugation failed to fix 0 and infinity")
    u = psi.g0 / psi.f2
    full = f.compose(Moebius.scaling(u))
    model_raw = conjugate(m, full)
    scale = model_raw.g0
    model = RatMap2(
        tuple(c / scale for c in model_raw.num),
        tuple(c / scale for c in model_raw.den),
    )
    l1, l2 = model.f1, model.g1
    if model.num != (1, l1, 0) or model.den != (0, l2, 1):  # pragma: no cover
        raise ValueError("normal form construction failed")
    if resultant(model) != 1 - l1 * l2:  # pragma: no cover
        raise ValueError("normal form resultant check failed")
    ts = {x.t for x in (full.a, full.b, full.c, full.d, l1, l2) if isinstance(x, QuadExt) and x.b != 0}
    return NormalForm(
        kind="A",
        conjugator=full,
        model=model,
        extension_t=ts.pop() if ts else None,
        lambda1=l1,
        lambda2=l2,
        lambda3=lambda3_from_pair(l1, l2),
    )


def _form_b(m: RatMap2) -> NormalForm:
    """Model z + s + 1/z: move the multiple fixed point to infinity, clear
    the finite pole to 0, then scale the constant term to 1 (this is where a
    quadratic extension may appear)."""
    points = fixed_points(m)
    double = [p for p, mult in points if mult >= 2]
    if not double:  # pragma: no cover
        raise NotConstructibleError("no repeated fixed point for the additive form")
    alpha = double[0]
    f1 = Moebius.identity() if alpha is INFINITY else Moebius(alpha, 1, 1, 0)
    psi = conjugate(m, f1)
    # now infinity is a repeated fixed point: psi = (f2 z^2 + f1 z + f0)/(f2 z + g0)
    if psi.g2 != 0 or psi.g1 != psi.f2 or psi.g1 == 0:  # pragma: no cover
        raise ValueError("repeated point did not land at infinity")
    w = psi.g0 / psi.g1
    f2 = Moebius.translation(-w)
    psi2 = conjugate(psi, f2)
    u = psi2.f1 / psi2.f2
    v = psi2.f0 / psi2.f2
    if psi2.g0 != 0 or v == 0:  # pragma: no cover
        raise ValueError("additive normal form construction failed")
    k = sqrt_exact(v)
    full = f1.compose(f2).compose(Moebius.scaling(k))
    model_raw = conjugate(m, full)
    scale = model_raw.g1
    model = RatMap2(
        tuple(c / scale for c in model_raw.num),
        tuple(c / scale for c in model_raw.den),
    )
    s = model.f1
    if model.num != (1, s, 1) or model.den != (0, 1, 0):  # pragma: no cover
        raise ValueError("additive normal form shape check failed")
    lam3 = 1 - s * s
    ts = {x.t for x in (full.a, full.b, full.c, full.d, s) if isinstance(x, QuadExt) and x.b != 0}
    return NormalForm(
        kind="B",
        conjugator=full,
        model=model,
        extension_t=ts.pop() if ts else None,
        lambda1=Fraction(1),
        lambda2=Fraction(1),
        lambda3=lam3,
        sqrt_term=s,
    )


def to_normal_form(m: RatMap2) -> NormalForm:
    """Normal form of m over Q or a single quadratic extension.

    Prefers the multiplicative shape (kind "A") whenever two fixed points
    with multiplier product != 1 exist, choosing rational points first, then
    the smallest extension, then the lexicographically first pair.  Falls
    back to the additive shape (kind "B") when every pair multiplies to 1
    (all multipliers equal 1).  Raises NotConstructibleError when the fixed
    points need a cubic extension.
    """
    points = fixed_points(m)
    with_mult = [(alpha, multiplier_at(m, alpha)) for alpha, _ in points]
    candidates = []
    for i, (a1, l1) in enumerate(with_mult):
        for j, (a2, l2) in enumerate(with_mult):
            if i == j or l1 * l2 == 1:
                continue
            ext = {
                x.t
                for x in (a1, a2)
                if isinstance(x, QuadExt) and x.b != 0
            }
            if len(ext) > 1:  # pragma: no cover
                continue
            rank = (
                1 if ext else 0,
                abs(ext.pop()) if ext else 0,
                _point_key(a1),
                _point_key(a2),
            )
            candidates.append((rank, a1, a2))
    if candidates:
        _, a1, a2 = min(candidates, key=lambda c: c[0])
        return _form_a_from_pair(m, a1, a2)
    return _form_b(m)
