"""Exact arithmetic over Q and quadratic extensions Q(sqrt(t)).

Everything here is immutable and exact: rationals are ``fractions.Fraction``,
elements of a quadratic extension are ``QuadExt`` values a + b*sqrt(t) with a
square-free integer t, and p-adic valuations are integers (half-integers on a
ramified extension).  The valuation of zero is ``INFINITY``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

INFINITY = math.inf

Rat = Union[int, Fraction]


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality by trial division (inputs are desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise ValueError(f"not a certified prime: {p!r}")
    return p


def factor_integer(n: int) -> list[tuple[int, int]]:
    """Prime factorization of |n| as [(p, e), ...] with p ascending.

    n = 0 is rejected; units factor to [].
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    out: list[tuple[int, int]] = []
    for p in (2, 3):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 5
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 2 if d % 6 == 5 else 4
    if n > 1:
        out.append((n, 1))
    return out


def square_free(n: int) -> tuple[int, int]:
    """Write n = s^2 * t with t square-free (sign kept in t); returns (t, s)."""
    if n == 0:
        return 0, 1
    t, s = (1 if n > 0 else -1), 1
    for p, e in factor_integer(n):
        s *= p ** (e // 2)
        if e % 2:
            t *= p
    return t, s


def _val_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(x: Rat, p: int) -> Union[int, float]:
    """p-adic valuation of a rational, normalized so val_p(p) = 1."""
    _require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return _val_int(x.numerator, p) - _val_int(x.denominator, p)


def sqrt_rational(x: Rat) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("square root of a negative rational: pick an extension instead")
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class QuadExt:
    """Element a + b*sqrt(t) of Q(sqrt(t)).

    t is normalized to a square-free integer (square factors are pulled into
    b), so Q(sqrt(12)) and Q(sqrt(3)) coincide syntactically.  A perfect
    square t is rejected: such values belong in Q.  Arithmetic results with
    b = 0 demote to plain Fraction, so any QuadExt produced by arithmetic is
    genuinely irrational.
    """

    __slots__ = ("a", "b", "t")

    def __init__(self, a: Rat, b: Rat, t: Rat):
        t = Fraction(t)
        if t == 0:
            raise ValueError("t must be nonzero")
        k = t.numerator * t.denominator
        t0, s = square_free(k)
        if t0 == 1:
            raise ValueError(f"t = {t} is a perfect square: stay in Q")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b) * Fraction(s, t.denominator))
        object.__setattr__(self, "t", t0)

    def __setattr__(self, *_):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, t: int) -> "QuadExt":
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        object.__setattr__(obj, "t", t)
        return obj

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, t: int) -> "Element":
        return a if b == 0 else cls._raw(a, b, t)

    def _parts(self, other) -> Optional[tuple[Fraction, Fraction]]:
        if isinstance(other, QuadExt):
            if other.b != 0 and other.t != self.t:
                raise ValueError(
                    f"mixing distinct extensions sqrt({self.t}) and sqrt({other.t})"
                )
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def norm(self) -> Fraction:
        """Field norm a^2 - t*b^2 down to Q; multiplicative."""
        return self.a * self.a - self.t * self.b * self.b

    def conjugate(self) -> "Element":
        return self._make(self.a, -self.b, self.t)

    def inverse(self) -> "Element":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(t))")
        return self._make(self.a / n, -self.b / n, self.t)

    def __add__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return self._make(self.a + oa, self.b + ob, self.t)

    __radd__ = __add__

    def __neg__(self):
        return self._make(-self.a, -self.b, self.t)

    def __sub__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return self._make(self.a - oa, self.b - ob, self.t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        parts = self._parts(other)
        if parts is None:
            return NotImplemented
        oa, ob = parts
        return self._make(
            self.a * oa + self.t * self.b * ob,
            self.a * ob + self.b * oa,
            self.t,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self._make(self.a / other, self.b / other, self.t)
        if isinstance(other, QuadExt):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            base = self.inverse()
            n = -n
        else:
            base = self
        result: Element = Fraction(1)
        for _ in range(n):
            result = base * result
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadExt):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.t == other.t and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.t))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __repr__(self) -> str:
        return f"QuadExt({self.a!r}, {self.b!r}, {self.t})"

    def __str__(self) -> str:
        return element_to_str(self)


Element = Union[Fraction, QuadExt]


def val_ext(x: Element, p: int) -> Union[Fraction, float]:
    """Valuation on Q(sqrt(t)) extending val_p, via the norm.

    val(x) = val_p(norm(x)) / 2, which is correct in both the ramified and
    the unramified case and agrees with val_p on rationals.
    """
    _require_prime(p)
    if isinstance(x, QuadExt):
        n = x.norm()
        if n == 0:
            return INFINITY
        return Fraction(val_p(n, p), 2)
    v = val_p(x, p)
    return v if v is INFINITY else Fraction(v)


def valuation(x: Element, p: int) -> Union[int, Fraction, float]:
    """val_p on rationals, the norm-based extension valuation otherwise."""
    if isinstance(x, QuadExt):
        return val_ext(x, p)
    return val_p(x, p)


def sqrt_exact(x: Rat) -> Element:
    """Exact square root of a rational, as a Fraction or a QuadExt.

    sqrt(12) comes back as 2*sqrt(3); negative inputs land in an imaginary
    extension (t < 0).
    """
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    k = x.numerator * x.denominator
    t0, s = square_free(k)
    root = Fraction(s, x.denominator)
    if t0 == 1:
        return root
    return QuadExt._raw(Fraction(0), root, t0)


def extension_of(x: Element) -> Optional[int]:
    """Square-free t of the extension x genuinely lives in, or None for Q."""
    if isinstance(x, QuadExt) and x.b != 0:
        return x.t
    return None


def element_to_str(x: Element) -> str:
    """Canonical exact rendering: "p/q" or "p/q+r/s*sqrt(t)"."""
    if isinstance(x, QuadExt):
        if x.b == 0:
            return str(x.a)
        mag = abs(x.b)
        root = f"sqrt({x.t})" if mag == 1 else f"{mag}*sqrt({x.t})"
        if x.a == 0:
            return root if x.b > 0 else f"-{root}"
        sign = "+" if x.b > 0 else "-"
        return f"{x.a}{sign}{root}"
    return str(Fraction(x))


_TERM_RE = re.compile(
    r"^(?:(?P<coef>-?\d+(?:/\d+)?)\*?)?(?:(?P<neg>-)?sqrt\((?P<t>-?\d+)\))?$"
)


def element_from_str(s: str) -> Element:
    """Inverse of element_to_str (lossless round-trip)."""
    s = s.replace(" ", "")
    if "sqrt" not in s:
        return Fraction(s)
    # split into rational part and sqrt term at the last top-level +/- before "sqrt"
    m = re.match(r"^(?P<head>.*?)(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?\*)?sqrt\((?P<t>-?\d+)\)$", s)
    if not m:
        raise ValueError(f"cannot parse element: {s!r}")
    head = m.group("head")
    sign = -1 if m.group("sign") == "-" else 1
    coef = Fraction(m.group("coef")[:-1]) if m.group("coef") else Fraction(1)
    t = int(m.group("t"))
    a = Fraction(head) if head not in ("", "+", "-") else Fraction(0)
    if head == "-":
        raise ValueError(f"cannot parse element: {s!r}")
    return QuadExt(a, sign * coef, t)
