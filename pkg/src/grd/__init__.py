"""Exact arithmetic toolkit for potential good reduction of degree-2 maps.

A map has potential good reduction when some conjugate over a finite
extension has unit resultant at every prime; over Q this happens exactly
when the moduli point (sigma1, sigma2) is integral, and the library then
builds an explicit conjugation witnessing it, at most one square root away.
Everything is computed in exact arithmetic; nothing here floats.
"""

from .exactnum import (
    INFINITY,
    QuadExt,
    element_from_str,
    element_to_str,
    factor_integer,
    is_prime,
    sqrt_exact,
    sqrt_rational,
    square_free,
    val_ext,
    val_p,
    valuation,
)
from .invariants import (
    MultiplierSpectrum,
    NormalForm,
    NotConstructibleError,
    fixed_point_form,
    fixed_points,
    is_integral_point,
    lambda3_from_pair,
    multiplier_at,
    sigma_invariants,
    to_normal_form,
)
from .mapexpr import MapSyntaxError, format_map, format_poly, parse_map
from .pgr import (
    BadWitness,
    CertificateError,
    Decision,
    LocalAnalysis,
    LocalCase,
    PgrCertificate,
    Verdict,
    build_conjugator_local,
    classify_at_p,
    decide_pgr,
    form_b_certificate,
    global_conjugator,
    is_minimal_by_valuation,
    is_minimal_monic,
)
from .quadpoly import (
    K4Verdict,
    QuadraticPgr,
    conjugate_to_good_quadratic,
    k4_criterion,
    normalize_quadratic,
    pgr_quadratic,
    search_good_model_at_2,
)
from .ratmap import (
    DegenerateMapError,
    Moebius,
    RatMap2,
    conjugate,
    degree_of_reduction,
    good_reduction_at,
    normalize_content,
    normalize_content_with_scale,
    resultant,
)

__all__ = [
    "INFINITY",
    "QuadExt",
    "element_from_str",
    "element_to_str",
    "factor_integer",
    "is_prime",
    "sqrt_exact",
    "sqrt_rational",
    "square_free",
    "val_ext",
    "val_p",
    "valuation",
    "MultiplierSpectrum",
    "NormalForm",
    "NotConstructibleError",
    "fixed_point_form",
    "fixed_points",
    "is_integral_point",
    "lambda3_from_pair",
    "multiplier_at",
    "sigma_invariants",
    "to_normal_form",
    "MapSyntaxError",
    "format_map",
    "format_poly",
    "parse_map",
    "BadWitness",
    "CertificateError",
    "Decision",
    "LocalAnalysis",
    "LocalCase",
    "PgrCertificate",
    "Verdict",
    "build_conjugator_local",
    "classify_at_p",
    "decide_pgr",
    "form_b_certificate",
    "global_conjugator",
    "is_minimal_by_valuation",
    "is_minimal_monic",
    "K4Verdict",
    "QuadraticPgr",
    "conjugate_to_good_quadratic",
    "k4_criterion",
    "normalize_quadratic",
    "pgr_quadratic",
    "search_good_model_at_2",
    "DegenerateMapError",
    "Moebius",
    "RatMap2",
    "conjugate",
    "degree_of_reduction",
    "good_reduction_at",
    "normalize_content",
    "normalize_content_with_scale",
    "resultant",
]
