import random
from fractions import Fraction

import pytest

from grd.exactnum import QuadExt
from grd.mapexpr import MapSyntaxError, format_map, format_poly, parse_map
from grd.ratmap import DegenerateMapError, RatMap2
from test_ratmap import random_map


def test_parse_examples():
    m = parse_map("(z^2-2*z)/(-2*z+1)")
    assert m.num == (1, -2, 0) and m.den == (0, -2, 1)

    m = parse_map("z^2+5/4")
    assert m.num == (1, 0, Fraction(5, 4)) and m.den == (0, 0, 1)

    with pytest.raises(MapSyntaxError):
        parse_map("(z^3)/(z+1)")


def test_parse_arithmetic():
    assert parse_map("z*z + 2*z") == parse_map("z^2 + 2*z")
    assert parse_map("(z+1)*(z-1)/(2*z)") == parse_map("(z^2-1)/(2*z)")
    assert parse_map("z^2 + 1/2") == parse_map("(2*z^2+1)/2")
    # cancellation through arithmetic keeps the degree in range
    assert parse_map("z^3 - z^3 + z^2") == parse_map("z^2")
    # unary minus binds after powers
    assert parse_map("-z^2/(z-1)") == parse_map("(-(z^2))/(z-1)")


def test_parse_errors_carry_positions():
    with pytest.raises(MapSyntaxError) as err:
        parse_map("z^2 + $")
    assert err.value.position == 6
    with pytest.raises(MapSyntaxError):
        parse_map("z^2 +")
    with pytest.raises(MapSyntaxError):
        parse_map("(z^2")
    with pytest.raises(MapSyntaxError):
        parse_map("z^2.5")
    with pytest.raises(MapSyntaxError):
        parse_map("z^-1")
    with pytest.raises(MapSyntaxError):
        parse_map("1/0")
    with pytest.raises(MapSyntaxError):
        parse_map("z^2 1")


def test_parse_degenerate_rejected():
    with pytest.raises(DegenerateMapError):
        parse_map("z^2/z")
    with pytest.raises(MapSyntaxError):
        parse_map("0/(z^2+1)")


def test_parse_degree_guard():
    with pytest.raises(MapSyntaxError):
        parse_map("z^65")
    with pytest.raises(MapSyntaxError):
        parse_map("(z+1)^3/(z^2+1)")


def test_format_round_trip_on_examples():
    for text in [
        "(z^2-2*z)/(-2*z+1)",
        "(z^2+9*z)/(z+1)",
        "z^2+5/4",
        "(z^2+13*z)/(z+1)",
        "z^2",
        "(z^2+3)/z",
    ]:
        m = parse_map(text)
        assert parse_map(format_map(m)) == m


def test_format_round_trip_on_randoms():
    rng = random.Random(41)
    for _ in range(100):
        m = random_map(rng)
        assert parse_map(format_map(m)) == m


def test_format_extension_coefficients():
    r2 = QuadExt(0, 1, 2)
    m = RatMap2((1, 2 * r2, -1), (0, 1, 0))
    assert format_map(m) == "(z^2+2*sqrt(2)*z-1)/(z)"
    mixed = RatMap2((1, 1 + r2, 0), (0, 1, 1))
    assert "(1+sqrt(2))*z" in format_map(mixed)


def test_format_poly_conventions():
    assert format_poly([Fraction(0), Fraction(-2), Fraction(1)]) == "z^2-2*z"
    assert format_poly([Fraction(1)]) == "1"
    assert format_poly([]) == "0"
    assert format_poly([Fraction(0), Fraction(-1)]) == "-z"
