import random
from fractions import Fraction

import pytest

from grd.exactnum import INFINITY, QuadExt
from grd.invariants import (
    MultiplierSpectrum,
    NotConstructibleError,
    fixed_point_form,
    fixed_points,
    is_integral_point,
    lambda3_from_pair,
    multiplier_at,
    sigma_invariants,
    to_normal_form,
)
from grd.polys import peval, rational_roots, trim
from grd.ratmap import Moebius, RatMap2, conjugate, resultant
from test_ratmap import EX1, EX2, SQUARING, random_map, random_moebius


def brute_force_fixed_points(m):
    # independent oracle: scan small rationals plus infinity
    found = []
    if m.g2 == 0:
        found.append(INFINITY)
    for num in range(-40, 41):
        for den in (1, 2, 3, 4):
            z = Fraction(num, den)
            fz = peval(m.affine_num(), z)
            gz = peval(m.affine_den(), z)
            if gz != 0 and fz == z * gz and z not in found:
                found.append(z)
    return found


def test_fixed_point_form_examples():
    # roots of the cubic match the brute-force fixed points
    phi3, phi2, phi1, phi0 = fixed_point_form(EX1)
    cubic = trim([phi0, phi1, phi2, phi3])
    roots = [r for r, _ in rational_roots(cubic)]
    assert sorted(roots) == [0, 1]
    assert phi3 == 0  # infinity fixed
    assert set(brute_force_fixed_points(EX1)) == {0, 1, INFINITY}
    assert set(brute_force_fixed_points(SQUARING)) == {0, 1, INFINITY}


def test_fixed_point_form_normal_form_fixes_zero_and_infinity():
    m = RatMap2((1, 7, 0), (0, 5, 1))
    pts = [p for p, _ in fixed_points(m)]
    assert Fraction(0) in pts and INFINITY in pts


def test_multiplier_examples():
    assert multiplier_at(EX1, Fraction(0)) == -2
    assert multiplier_at(SQUARING, Fraction(1)) == 2
    for l2 in (Fraction(4), Fraction(1), Fraction(-7)):
        m = RatMap2((1, 3, 0), (0, l2, 1))
        assert multiplier_at(m, INFINITY) == l2
    with pytest.raises(ValueError):
        multiplier_at(EX1, Fraction(5))


def test_multiplier_all_fixed_points_of_ex1():
    assert [multiplier_at(EX1, a) for a in (Fraction(0), Fraction(1), INFINITY)] == [
        -2,
        -2,
        -2,
    ]


def test_sigma_examples():
    s = sigma_invariants(EX1)
    assert (s.sigma1, s.sigma2, s.sigma3) == (-6, 12, -8)
    assert s.multipliers == (-2, -2, -2)

    for c in (Fraction(0), Fraction(5, 4), Fraction(-3), Fraction(1, 3)):
        s = sigma_invariants(RatMap2((1, 0, c), (0, 0, 1)))
        assert (s.sigma1, s.sigma2, s.sigma3) == (2, 4 * c, 0)

    s = sigma_invariants(EX2)
    assert (s.sigma1, s.sigma2, s.sigma3) == (11, 19, 9)
    assert s.multipliers == (1, 1, 9)


def test_sigma_matches_direct_multipliers():
    # cross-check the eliminant route against direct differentiation
    for m in (EX1, EX2, SQUARING):
        mults = [multiplier_at(m, a) for a, k in fixed_points(m) for _ in range(k)]
        s = sigma_invariants(m)
        assert sum(mults) == s.sigma1
        assert (
            mults[0] * mults[1] + mults[0] * mults[2] + mults[1] * mults[2]
            == s.sigma2
        )
        assert mults[0] * mults[1] * mults[2] == s.sigma3


def test_sigma_relation_always_holds():
    rng = random.Random(11)
    for _ in range(200):
        s = sigma_invariants(random_map(rng))
        assert s.sigma1 - s.sigma3 == 2


def test_sigma_conjugation_invariant():
    rng = random.Random(12)
    for _ in range(100):
        m = random_map(rng)
        f = random_moebius(rng)
        s1, s2 = sigma_invariants(m), sigma_invariants(conjugate(m, f))
        assert (s1.sigma1, s1.sigma2, s1.sigma3) == (s2.sigma1, s2.sigma2, s2.sigma3)


def test_lambda3_examples():
    assert lambda3_from_pair(Fraction(9), Fraction(1)) == 1
    assert lambda3_from_pair(Fraction(0), Fraction(0)) == 2
    assert lambda3_from_pair(Fraction(4), Fraction(7)) == Fraction(1, 3)
    with pytest.raises(ValueError):
        lambda3_from_pair(Fraction(2), Fraction(1, 2))


def test_lambda3_matches_spectrum():
    rng = random.Random(13)
    count = 0
    while count < 60:
        m = random_map(rng)
        s = sigma_invariants(m)
        if s.multipliers is None:
            continue
        l1, l2, l3 = s.multipliers
        if any(isinstance(x, QuadExt) for x in s.multipliers) or l1 * l2 == 1:
            continue
        assert lambda3_from_pair(l1, l2) == l3
        count += 1


def test_is_integral_point():
    good = MultiplierSpectrum(Fraction(-6), Fraction(12), Fraction(-8))
    assert is_integral_point(good)
    bad = MultiplierSpectrum(Fraction(2), Fraction(4, 3), Fraction(0))
    assert not is_integral_point(bad, 3)
    assert is_integral_point(bad, 2)
    half = MultiplierSpectrum(Fraction(2), Fraction(2), Fraction(0))
    assert is_integral_point(half)


def test_spectrum_validates_consistency():
    with pytest.raises(ValueError):
        MultiplierSpectrum(Fraction(1), Fraction(0), Fraction(1))
    with pytest.raises(ValueError):
        MultiplierSpectrum(
            Fraction(3), Fraction(3), Fraction(1), (Fraction(2),) * 3
        )


def test_to_normal_form_squaring():
    nf = to_normal_form(SQUARING)
    assert nf.kind == "A"
    assert (nf.lambda1, nf.lambda2) == (0, 0)
    assert nf.model == SQUARING
    assert nf.conjugator.is_identity()


def test_to_normal_form_already_in_shape():
    nf = to_normal_form(EX2)
    assert nf.kind == "A"
    assert (nf.lambda1, nf.lambda2) == (9, 1)
    assert nf.conjugator.is_identity()


def test_to_normal_form_undoes_conjugation():
    # conjugate the Ex2 shape away and recover the same multiplier pair
    f = Moebius(2, 1, 1, 1)
    moved = conjugate(EX2, f)
    nf = to_normal_form(moved)
    assert nf.kind == "A"
    assert {nf.lambda1, nf.lambda2} == {9, 1}
    assert conjugate(moved, nf.conjugator) == nf.model
    assert resultant(nf.model) == 1 - nf.lambda1 * nf.lambda2


def test_to_normal_form_additive_case():
    # z + 3/z: every multiplier is 1, so the multiplicative shape is out
    m = RatMap2((1, 0, 3), (0, 1, 0))
    nf = to_normal_form(m)
    assert nf.kind == "B"
    assert nf.lambda3 == 1 and nf.sqrt_term == 0
    assert nf.model == RatMap2((1, 0, 1), (0, 1, 0))
    assert nf.extension_t == 3  # the scaling sqrt(3) lives in the conjugator
    assert resultant(nf.model) == 1


def test_to_normal_form_additive_with_translation():
    # z + 1/z (all multipliers 1) moved by z + 2 comes back to itself
    base = RatMap2((1, 0, 1), (0, 1, 0))
    moved = conjugate(base, Moebius.translation(2))
    nf = to_normal_form(moved)
    assert nf.kind == "B"
    assert nf.sqrt_term == 0 and nf.lambda3 == 1
    assert nf.model == base


def test_to_normal_form_multiplier_one_pair_prefers_multiplicative():
    # multipliers (1, 1, 0): a pair with product 0 exists, so the
    # multiplicative shape wins over the additive one
    m = RatMap2((1, 1, 1), (0, 1, 0))  # z + 1 + 1/z
    nf = to_normal_form(m)
    assert nf.kind == "A"
    assert {nf.lambda1, nf.lambda2} == {1, 0}
    m2 = RatMap2((1, 1, 0), (0, 0, 1))  # z^2 + z
    nf2 = to_normal_form(m2)
    assert nf2.kind == "A"
    assert {nf2.lambda1, nf2.lambda2} == {1, 0}


def test_to_normal_form_extension_fixed_points():
    # z^2 + 1: two conjugate fixed points over Q(sqrt(-3))
    m = RatMap2((1, 0, 1), (0, 0, 1))
    nf = to_normal_form(m)
    assert nf.kind == "A"
    assert nf.extension_t == -3
    assert resultant(nf.model) == 1 - nf.lambda1 * nf.lambda2
    assert conjugate(m, nf.conjugator) == nf.model


def test_to_normal_form_cubic_extension_rejected():
    # (z^2 + 2)/z^2: the fixed cubic z^3 - z^2 - 2 has no rational root
    m = RatMap2((1, 0, 2), (1, 0, 0))
    with pytest.raises(NotConstructibleError):
        fixed_points(m)
    with pytest.raises(NotConstructibleError):
        to_normal_form(m)


def test_theorem_sum_of_inverse_one_minus_multiplier():
    # when no multiplier is 1: sum 1/(1 - mult) = 1; via explicit multipliers
    rng = random.Random(14)
    count = 0
    while count < 40:
        m = random_map(rng)
        s = sigma_invariants(m)
        if s.multipliers is None or any(x == 1 for x in s.multipliers):
            continue
        total = sum(1 / (1 - x) for x in s.multipliers)
        assert total == 1
        count += 1
