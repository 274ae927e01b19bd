import random
from fractions import Fraction
from itertools import product

import pytest

from grd.exactnum import val_p
from grd.quadpoly import (
    conjugate_to_good_quadratic,
    k4_criterion,
    normalize_quadratic,
    pgr_quadratic,
    search_good_model_at_2,
)
from grd.ratmap import Moebius, RatMap2, conjugate, normalize_content, resultant


def quad_map(c):
    return RatMap2((1, 0, Fraction(c)), (0, 0, 1))


def test_normalize_quadratic_examples():
    c, h = normalize_quadratic(Fraction(1), Fraction(0), Fraction(5, 4))
    assert c == Fraction(5, 4) and h.is_identity()

    c, h = normalize_quadratic(Fraction(1), Fraction(1), Fraction(1))
    assert c == Fraction(5, 4)

    c, h = normalize_quadratic(Fraction(2), Fraction(0), Fraction(0))
    assert c == 0 and (h.a, h.b) == (Fraction(1, 2), 0)

    with pytest.raises(ValueError):
        normalize_quadratic(Fraction(0), Fraction(1), Fraction(1))


def test_normalize_quadratic_conjugator_realizes_it():
    rng = random.Random(31)
    for _ in range(50):
        A = Fraction(rng.choice([x for x in range(-6, 7) if x]), rng.randint(1, 4))
        B = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        C = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        c, h = normalize_quadratic(A, B, C)
        source = RatMap2((A, B, C), (0, 0, 1))
        assert conjugate(source, h) == quad_map(c)


def test_pgr_quadratic_examples():
    assert pgr_quadratic(Fraction(5, 4)).is_pgr
    bad = pgr_quadratic(Fraction(1, 3))
    assert not bad.is_pgr and bad.failing_primes == (3,)
    assert pgr_quadratic(Fraction(7)).is_pgr
    assert pgr_quadratic(Fraction(5, 12)).failing_primes == (3,)


def test_conjugate_to_good_examples():
    cert = conjugate_to_good_quadratic(Fraction(0))
    assert cert.result == RatMap2((1, 2, 0), (0, 0, 1))  # z^2 + 2z
    assert cert.res_after == 1 and cert.extension_t is None

    cert = conjugate_to_good_quadratic(Fraction(1, 4))
    assert cert.result == RatMap2((1, 1, 0), (0, 0, 1))  # z^2 + z

    cert = conjugate_to_good_quadratic(Fraction(-3, 4))
    assert cert.result == RatMap2((1, 3, 0), (0, 0, 1))  # z^2 + 3z

    cert = conjugate_to_good_quadratic(Fraction(2))
    assert cert.extension_t == -7
    assert cert.res_after == 1

    with pytest.raises(ValueError):
        conjugate_to_good_quadratic(Fraction(1, 3))


def test_conjugate_to_good_moves_by_a_fixed_point():
    # the recorded f really conjugates z^2+c onto the model
    for c in (Fraction(0), Fraction(-3, 4), Fraction(5, 4), Fraction(-2)):
        cert = conjugate_to_good_quadratic(c)
        assert conjugate(quad_map(c), cert.f) == cert.result


def test_k4_examples():
    v = k4_criterion(5)
    assert (v.requires_extension, v.b, v.c) == (False, 1, 1)
    v = k4_criterion(4)
    assert (v.requires_extension, v.b, v.c) == (False, 0, 1)
    assert k4_criterion(2).requires_extension
    assert k4_criterion(-50).requires_extension  # -50 = 2 mod 4
    assert not k4_criterion(-3).requires_extension  # -3 = 1 mod 4


def test_k4_models_are_conjugate_and_good():
    for k in range(-20, 21):
        v = k4_criterion(k)
        if v.requires_extension:
            continue
        model = RatMap2((1, v.b, v.c), (0, 0, 1))
        # conjugate z^2 + k/4 by z + b/2 and compare
        f = Moebius(1, Fraction(v.b, 2), 0, 1)
        assert conjugate(quad_map(Fraction(k, 4)), f) == model
        assert resultant(model) == 1


def test_search_matches_exact_small_height():
    # the vectorized valuation search against a direct exact sweep
    def exact_search(k, H):
        phi = quad_map(Fraction(k, 4))
        for a, b, c, d in product(range(-H, H + 1), repeat=4):
            if a * d - b * c == 0:
                continue
            g = normalize_content(conjugate(phi, Moebius(a, b, c, d)))
            if val_p(resultant(g), 2) == 0:
                return True
        return False

    for k in range(-6, 7):
        assert (search_good_model_at_2(k, height=2) is not None) == exact_search(k, 2)


def test_search_finds_nothing_for_2_3_mod_4():
    for k in (2, 3, -2, 6, 11):
        assert search_good_model_at_2(k, height=8) is None


def test_search_witness_is_good_when_found():
    found = search_good_model_at_2(5, height=3)
    assert found is not None
    g = normalize_content(conjugate(quad_map(Fraction(5, 4)), Moebius(*found)))
    assert val_p(resultant(g), 2) == 0
