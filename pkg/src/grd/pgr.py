"""Potential-good-reduction decision and constructive conjugators.

A degree-2 map over Q has potential good reduction exactly when its moduli
point (sigma1, sigma2) is integral.  When it is, a multiplicative normal
form (z^2 + l1 z)/(l2 z + 1) exists with integer l1, l2, and every prime
dividing its resultant 1 - l1*l2 satisfies l1*l2 = 1 mod p.  Writing
l_i = 1 + a_i p^(e_i) with p-unit a_i (e_i = +infinity encodes l_i = 1),
each such prime falls into exactly one constructive case or is a witness of
genuinely bad reduction; the constructive cases are repaired by conjugating
with f(z) = z - 1 and then g(z) = c z where c^2 is a power of p.  A single
c = sqrt(prod p^w_p) repairs all primes at once over at most one quadratic
extension.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .exactnum import (
    Element,
    INFINITY,
    QuadExt,
    _require_prime,
    extension_of,
    factor_integer,
    sqrt_exact,
    val_p,
    valuation,
)
from .invariants import (
    MultiplierSpectrum,
    NormalForm,
    NotConstructibleError,
    sigma_invariants,
    to_normal_form,
)
from .ratmap import (
    Moebius,
    RatMap2,
    conjugate,
    normalize_content,
    normalize_content_with_scale,
    resultant,
)


class LocalCase(enum.Enum):
    """Per-prime classification of a normal form with l1*l2 = 1 mod p."""

    ALREADY_GOOD = "already_good"
    LEVELS_DIFFER = "levels_differ"  # e1 != e2; c^2 = p^min(e1,e2)
    SUM_SHALLOW = "sum_shallow"  # e1 = e2 = e, val(a1+a2) = d < e; c^2 = p^(e+d)
    SUM_DEEP = "sum_deep"  # e1 = e2 = e, val(a1+a2) >= e, unit obstruction absent; c^2 = p^(2e)
    GENUINELY_BAD = "genuinely_bad"
    ADDITIVE_FORM_GOOD = "additive_form_good"


CONSTRUCTIVE_CASES = (
    LocalCase.LEVELS_DIFFER,
    LocalCase.SUM_SHALLOW,
    LocalCase.SUM_DEEP,
)


class Verdict(enum.Enum):
    PGR = "pgr"
    PGR_DECISION_ONLY = "pgr_decision_only"
    GENUINELY_BAD = "genuinely_bad"


class CertificateError(RuntimeError):
    """An internally constructed certificate failed its own verification."""


@dataclass(frozen=True)
class LocalAnalysis:
    """Classification data at one prime.

    e1/e2 and a1/a2 are ordered so e1 <= e2 (swapped=True records that this
    reverses the map's own orientation); lambda1/lambda2 keep the
    orientation of the normal form.  c_exponent is the w with c = sqrt(p^w).
    """

    p: int
    verdict: LocalCase
    lambda1: Optional[Element] = None
    lambda2: Optional[Element] = None
    e1: Optional[Union[int, float]] = None
    e2: Optional[Union[int, float]] = None
    a1: Optional[Element] = None
    a2: Optional[Element] = None
    a: Optional[Element] = None
    d: Optional[int] = None
    c_exponent: Optional[int] = None
    swapped: bool = False


@dataclass(frozen=True)
class PgrCertificate:
    """A checked conjugation to a model with unit resultant.

    Applying f then g to the conjugated_from map yields result after
    clearing the recorded content; the exact identity
    c^6 * resultant(conjugated_from) = content^4 * resultant(result)
    holds, which is the resultant relation res_before = c^2 * res_after once
    the content equals c^2.
    """

    conjugated_from: RatMap2
    f: Moebius
    g: Moebius
    c: Element
    result: RatMap2
    extension_t: Optional[int]
    res_before: Element
    res_after: Element
    content: Element
    primes: tuple[int, ...] = ()
    intermediates: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BadWitness:
    """Evidence of genuinely bad reduction at a prime."""

    prime: int
    primes: tuple[int, ...]
    sigma1_val: Union[int, float]
    sigma2_val: Union[int, float]
    multiplier: Optional[Element] = None


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    spectrum: MultiplierSpectrum
    normal_form: Optional[NormalForm] = None
    analyses: tuple[LocalAnalysis, ...] = ()
    certificate: Optional[PgrCertificate] = None
    witness: Optional[BadWitness] = None
    reason: str = ""


def _unit_level(lam: Element, p: int) -> tuple[Union[int, float], Optional[Element]]:
    """Write lam = 1 + a p^e with val_p(a) = 0; e = +infinity encodes lam = 1."""
    diff = lam - 1
    if diff == 0:
        return INFINITY, None
    e = val_p(diff, p)
    return e, diff / Fraction(p) ** e


def classify_at_p(lambda1: Element, lambda2: Element, p: int) -> LocalAnalysis:
    """Classify one prime of the multiplicative normal form.

    Requires lambda1, lambda2 integral at p and lambda1*lambda2 != 1.  The
    verdict is genuinely bad exactly when the third multiplier
    (2 - l1 - l2)/(1 - l1*l2) has negative valuation at p.
    """
    _require_prime(p)
    if not isinstance(lambda1, Fraction) or not isinstance(lambda2, Fraction):
        lambda1, lambda2 = Fraction(lambda1), Fraction(lambda2)  # raises on QuadExt
    if lambda1 * lambda2 == 1:
        raise ValueError("lambda1*lambda2 = 1: use the additive form instead")
    if val_p(lambda1, p) < 0 or val_p(lambda2, p) < 0:
        raise ValueError(f"multiplier not integral at {p}")
    res_val = val_p(1 - lambda1 * lambda2, p)
    if res_val == 0:
        return LocalAnalysis(p=p, verdict=LocalCase.ALREADY_GOOD,
                             lambda1=lambda1, lambda2=lambda2)
    e1, a1 = _unit_level(lambda1, p)
    e2, a2 = _unit_level(lambda2, p)
    if min(e1, e2) < 1:
        # l1*l2 = 1 mod p with l1 != 1 mod p forces a non-integral third
        # multiplier: 2 - l1 - l2 is then a p-unit while 1 - l1*l2 is not
        return LocalAnalysis(p=p, verdict=LocalCase.GENUINELY_BAD,
                             lambda1=lambda1, lambda2=lambda2, e1=e1, e2=e2,
                             a1=a1, a2=a2)
    swapped = e2 < e1
    if swapped:
        e1, e2, a1, a2 = e2, e1, a2, a1
    if e1 != e2:
        analysis = LocalAnalysis(
            p=p, verdict=LocalCase.LEVELS_DIFFER, lambda1=lambda1,
            lambda2=lambda2, e1=e1, e2=e2, a1=a1, a2=a2,
            c_exponent=int(e1), swapped=swapped,
        )
        expected = e1
    else:
        e = int(e1)
        s = a1 + a2
        d = val_p(s, p) if s != 0 else INFINITY
        if d < e:
            a = s / Fraction(p) ** d
            analysis = LocalAnalysis(
                p=p, verdict=LocalCase.SUM_SHALLOW, lambda1=lambda1,
                lambda2=lambda2, e1=e, e2=e, a1=a1, a2=a2, a=a, d=int(d),
                c_exponent=e + int(d), swapped=swapped,
            )
            expected = e + d
        else:
            # val(a1+a2) >= e: write a1+a2 = a p^e with a integral at p
            # (a is a unit exactly when val(a1+a2) = e; a = 0 when a1 = -a2)
            a = s / Fraction(p) ** e
            if val_p(a + a1 * a2, p) >= 1:
                analysis = LocalAnalysis(
                    p=p, verdict=LocalCase.GENUINELY_BAD, lambda1=lambda1,
                    lambda2=lambda2, e1=e, e2=e, a1=a1, a2=a2, a=a,
                    swapped=swapped,
                )
                expected = None
            else:
                analysis = LocalAnalysis(
                    p=p, verdict=LocalCase.SUM_DEEP, lambda1=lambda1,
                    lambda2=lambda2, e1=e, e2=e, a1=a1, a2=a2, a=a,
                    c_exponent=2 * e, swapped=swapped,
                )
                expected = 2 * e
    if expected is not None and res_val != expected:  # pragma: no cover
        raise CertificateError(
            f"resultant valuation bookkeeping failed at {p}: "
            f"val = {res_val}, case predicts {expected}"
        )
    return analysis


def _form_a_map(lambda1: Element, lambda2: Element) -> RatMap2:
    return RatMap2((1, lambda1, 0), (0, lambda2, 1))


def _case_intermediates(la: LocalAnalysis) -> dict:
    """Per-prime substitution data (informational, recorded in certificates)."""
    p = Fraction(la.p)
    l1, l2 = la.lambda1, la.lambda2
    if la.verdict is LocalCase.LEVELS_DIFFER:
        c2 = p ** int(la.c_exponent)
        return {"m": (l1 + l2 - 2) / c2, "n": (1 - l2) / c2}
    if la.verdict is LocalCase.SUM_SHALLOW:
        half, odd = divmod(int(la.c_exponent), 2)
        c: Element = p**half if not odd else QuadExt(0, p**half, la.p)
        return {"a": la.a, "n": (1 - l2) / c}
    if la.verdict is LocalCase.SUM_DEEP:
        return {"a": la.a, "a2": la.a2}
    return {}


def _certificate(
    form: RatMap2,
    c: Element,
    primes: tuple[int, ...],
    intermediates: dict,
    pre_conjugator: Optional[Moebius] = None,
) -> PgrCertificate:
    """Conjugate by f(z) = z - 1 then g(z) = c z, normalize, and verify."""
    f = Moebius.translation(-1)
    g = Moebius.scaling(c)
    raw = conjugate(conjugate(form, f), g)
    result, content = normalize_content_with_scale(raw)
    res_before = resultant(form)
    res_after = resultant(result)
    if c**6 * res_before != content**4 * res_after:  # pragma: no cover
        raise CertificateError("resultant relation failed")
    for p in primes:
        if valuation(res_after, p) != 0:  # pragma: no cover
            raise CertificateError(f"result is not a unit at {p}")
    if pre_conjugator is not None and not pre_conjugator.is_identity():
        f = pre_conjugator.compose(f)
    return PgrCertificate(
        conjugated_from=form,
        f=f,
        g=g,
        c=c,
        result=result,
        extension_t=extension_of(c),
        res_before=res_before,
        res_after=res_after,
        content=content,
        primes=primes,
        intermediates=intermediates,
    )


def build_conjugator_local(la: LocalAnalysis) -> PgrCertificate:
    """Certificate repairing a single constructive prime of the normal form."""
    if la.verdict not in CONSTRUCTIVE_CASES:
        raise ValueError(f"no conjugator for verdict {la.verdict.value}")
    w = la.c_exponent
    c = sqrt_exact(Fraction(la.p) ** w)
    return _certificate(
        _form_a_map(la.lambda1, la.lambda2),
        c,
        (la.p,),
        {la.p: _case_intermediates(la)},
    )


def global_conjugator(
    analyses: list[LocalAnalysis],
    form: RatMap2,
    pre_conjugator: Optional[Moebius] = None,
) -> PgrCertificate:
    """Single certificate repairing every analyzed prime at once.

    c = sqrt(prod p^w_p), rational when the product is a square, otherwise
    in Q(sqrt(t)) for the square-free part t.  Primes whose analysis is
    already good stay good because they do not divide the form's resultant.
    """
    if not analyses:
        raise ValueError("no analyses to combine")
    bad = [la for la in analyses if la.verdict not in CONSTRUCTIVE_CASES]
    if bad:
        raise ValueError(
            f"non-constructive analysis at p = {bad[0].p}: {bad[0].verdict.value}"
        )
    w = Fraction(1)
    for la in analyses:
        w *= Fraction(la.p) ** la.c_exponent
    c = sqrt_exact(w)
    return _certificate(
        form,
        c,
        tuple(la.p for la in analyses),
        {la.p: _case_intermediates(la) for la in analyses},
        pre_conjugator,
    )


def form_b_certificate(lambda3: Element) -> PgrCertificate:
    """Good-reduction model z + sqrt(1 - lambda3) + 1/z for integral lambda3.

    The model's resultant is exactly 1, so it has good reduction at every
    prime; the extension is Q(sqrt(t)) for the square-free part of
    1 - lambda3 (none when that is a perfect square).
    """
    lambda3 = Fraction(lambda3)
    if lambda3.denominator != 1:
        raise ValueError("lambda3 must be integral")
    s = sqrt_exact(1 - lambda3)
    model = RatMap2((1, s, 1), (0, 1, 0))
    res = resultant(model)
    if res != 1:  # pragma: no cover
        raise CertificateError("additive model resultant is not 1")
    return PgrCertificate(
        conjugated_from=model,
        f=Moebius.identity(),
        g=Moebius.identity(),
        c=Fraction(1),
        result=model,
        extension_t=extension_of(s),
        res_before=res,
        res_after=res,
        content=Fraction(1),
        primes=(),
        intermediates={"sqrt_term": s, "lambda3": lambda3},
    )


def _trivial_certificate(nf: NormalForm) -> PgrCertificate:
    res = resultant(nf.model)
    return PgrCertificate(
        conjugated_from=nf.model,
        f=nf.conjugator,
        g=Moebius.identity(),
        c=Fraction(1),
        result=nf.model,
        extension_t=nf.extension_t,
        res_before=res,
        res_after=res,
        content=Fraction(1),
        primes=(),
        intermediates={},
    )


def _bad_witness(spectrum: MultiplierSpectrum, primes: list[int]) -> BadWitness:
    p = min(primes)
    mult = None
    if spectrum.multipliers is not None:
        for lam in spectrum.multipliers:
            if valuation(lam, p) < 0:
                mult = lam
                break
    return BadWitness(
        prime=p,
        primes=tuple(sorted(primes)),
        sigma1_val=val_p(spectrum.sigma1, p),
        sigma2_val=val_p(spectrum.sigma2, p),
        multiplier=mult,
    )


def decide_pgr(
    m: RatMap2,
    primes: Optional[list[int]] = None,
    construct: bool = True,
) -> Decision:
    """Decide potential good reduction of a map over Q; construct a
    certificate when possible.

    The verdict is genuinely bad exactly when (sigma1, sigma2) is
    non-integral (at one of the given primes, if restricted).  Otherwise the
    map has potential good reduction; a certificate is built through the
    normal form unless construction is disabled or the normal form needs
    arithmetic outside Q and a single quadratic extension.
    """
    m = normalize_content(m)
    spectrum = sigma_invariants(m)
    if primes is not None:
        primes = sorted({_require_prime(p) for p in primes})
        failing = [
            p
            for p in primes
            if val_p(spectrum.sigma1, p) < 0 or val_p(spectrum.sigma2, p) < 0
        ]
    else:
        dens = spectrum.sigma1.denominator * spectrum.sigma2.denominator
        failing = [p for p, _ in factor_integer(dens)] if dens > 1 else []
    if failing:
        return Decision(
            verdict=Verdict.GENUINELY_BAD,
            spectrum=spectrum,
            witness=_bad_witness(spectrum, failing),
        )
    if not construct:
        return Decision(
            verdict=Verdict.PGR_DECISION_ONLY,
            spectrum=spectrum,
            reason="construction disabled",
        )
    try:
        nf = to_normal_form(m)
    except NotConstructibleError as exc:
        return Decision(
            verdict=Verdict.PGR_DECISION_ONLY, spectrum=spectrum, reason=str(exc)
        )

    if nf.kind == "B":
        base = form_b_certificate(nf.lambda3)
        cert = PgrCertificate(
            conjugated_from=nf.model,
            f=nf.conjugator,
            g=Moebius.identity(),
            c=Fraction(1),
            result=nf.model,
            extension_t=nf.extension_t,
            res_before=base.res_before,
            res_after=base.res_after,
            content=Fraction(1),
            primes=(),
            intermediates=base.intermediates,
        )
        analyses = tuple(
            LocalAnalysis(p=p, verdict=LocalCase.ADDITIVE_FORM_GOOD)
            for p, _ in factor_integer(resultant(m).numerator)
            if primes is None or p in primes
        )
        return Decision(
            verdict=Verdict.PGR,
            spectrum=spectrum,
            normal_form=nf,
            analyses=analyses,
            certificate=cert,
        )

    l1, l2 = nf.lambda1, nf.lambda2
    if isinstance(l1, QuadExt) or isinstance(l2, QuadExt):
        return Decision(
            verdict=Verdict.PGR_DECISION_ONLY,
            spectrum=spectrum,
            normal_form=nf,
            reason="normal form multipliers lie in a quadratic extension; "
            "the constructive combination is implemented over Z",
        )
    res_form = resultant(nf.model)
    if primes is not None:
        ps = [p for p in primes if val_p(res_form, p) > 0]
    else:
        ps = (
            [p for p, _ in factor_integer(res_form.numerator)]
            if abs(res_form) != 1
            else []
        )
    if not ps:
        return Decision(
            verdict=Verdict.PGR,
            spectrum=spectrum,
            normal_form=nf,
            certificate=_trivial_certificate(nf),
        )
    analyses = tuple(classify_at_p(l1, l2, p) for p in ps)
    if any(la.verdict is LocalCase.ALREADY_GOOD for la in analyses):  # pragma: no cover
        raise CertificateError(
            "a prime dividing 1 - l1*l2 cannot have l1*l2 != 1 mod p"
        )
    if any(la.verdict is LocalCase.GENUINELY_BAD for la in analyses):
        # unreachable for integral sigmas; kept for defensive completeness
        bad_ps = [la.p for la in analyses if la.verdict is LocalCase.GENUINELY_BAD]
        return Decision(
            verdict=Verdict.GENUINELY_BAD,
            spectrum=spectrum,
            normal_form=nf,
            analyses=analyses,
            witness=_bad_witness(spectrum, bad_ps),
        )
    w = Fraction(1)
    for la in analyses:
        w *= Fraction(la.p) ** la.c_exponent
    t_c = extension_of(sqrt_exact(w))
    if nf.extension_t is not None and t_c is not None and t_c != nf.extension_t:
        return Decision(
            verdict=Verdict.PGR_DECISION_ONLY,
            spectrum=spectrum,
            normal_form=nf,
            analyses=analyses,
            reason="certificate would need two independent square roots",
        )
    cert = global_conjugator(list(analyses), nf.model, nf.conjugator)
    return Decision(
        verdict=Verdict.PGR,
        spectrum=spectrum,
        normal_form=nf,
        analyses=analyses,
        certificate=cert,
    )


def is_minimal_by_valuation(m: RatMap2, p: int) -> bool:
    """Sufficient minimality test at p: resultant valuation below 2.

    A content-normalized degree-2 model whose resultant has valuation 0 or 1
    at p cannot be improved by any conjugation over Q at p.
    """
    _require_prime(p)
    mm = normalize_content(m)
    if mm.extension_t() is not None:
        raise ValueError("minimality predicates apply to maps over Q")
    return val_p(resultant(mm), p) < 2


def is_minimal_monic(m: RatMap2) -> bool:
    """Sufficient minimality test: monic numerator of degree 2 over a monic
    denominator of degree 1 (affine shape z^2 + ... over z + ...)."""
    mm = normalize_content(m)
    if mm.extension_t() is not None:
        raise ValueError("minimality predicates apply to maps over Q")
    return mm.f2 == 1 and mm.g2 == 0 and mm.g1 == 1
