"""Parsing and printing of degree-2 rational map expressions in z.

Grammar: rational functions in one variable z built from integer literals,
+ - * / ^ and parentheses; rational coefficients like 5/4 arrive through the
division operator.  The numerator and denominator must each have degree at
most 2 after full expansion.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import QuadExt, element_to_str
from .polys import degree, padd, pmul, pneg, psub, trim
from .ratmap import RatMap2

_MAX_INTERMEDIATE_DEGREE = 64
_MAX_EXPONENT = 64


class MapSyntaxError(ValueError):
    """Syntax or degree error, carrying the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return ("end", None, self.pos)
        ch = self.text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < len(self.text) and self.text[j].isdigit():
                j += 1
            if j < len(self.text) and self.text[j] == ".":
                raise MapSyntaxError("decimal literals are not exact", self.pos)
            return ("num", int(self.text[self.pos : j]), self.pos)
        if ch == "z":
            return ("z", None, self.pos)
        if ch in "+-*/^()":
            return (ch, None, self.pos)
        raise MapSyntaxError(f"unexpected character {ch!r}", self.pos)

    def take(self):
        kind, value, pos = self.peek()
        if kind == "num":
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
        elif kind != "end":
            self.pos += 1
        return kind, value, pos


# a rational function is a pair (numerator, denominator) of ascending
# Fraction coefficient lists
_ONE = [Fraction(1)]


def _check_degree(value, pos):
    if degree(value[0]) > _MAX_INTERMEDIATE_DEGREE or degree(value[1]) > _MAX_INTERMEDIATE_DEGREE:
        raise MapSyntaxError("intermediate degree too large", pos)
    return value


class _Parser:
    def __init__(self, text: str):
        self.toks = _Tokenizer(text)

    def parse(self):
        value = self.expr()
        kind, _, pos = self.toks.take()
        if kind != "end":
            raise MapSyntaxError("trailing input", pos)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, _, pos = self.toks.peek()
            if kind not in ("+", "-"):
                return value
            self.toks.take()
            rhs = self.term()
            n1, d1 = value
            n2, d2 = rhs
            combine = padd if kind == "+" else psub
            value = _check_degree(
                (trim(combine(pmul(n1, d2), pmul(n2, d1))), trim(pmul(d1, d2))), pos
            )

    def term(self):
        value = self.unary()
        while True:
            kind, _, pos = self.toks.peek()
            if kind not in ("*", "/"):
                return value
            self.toks.take()
            rhs = self.unary()
            n1, d1 = value
            n2, d2 = rhs
            if kind == "*":
                value = (trim(pmul(n1, n2)), trim(pmul(d1, d2)))
            else:
                if not trim(n2):
                    raise MapSyntaxError("division by zero", pos)
                value = (trim(pmul(n1, d2)), trim(pmul(d1, n2)))
            value = _check_degree(value, pos)

    def unary(self):
        kind, _, _ = self.toks.peek()
        if kind in ("+", "-"):
            self.toks.take()
            value = self.unary()
            return (pneg(value[0]), value[1]) if kind == "-" else value
        return self.power()

    def power(self):
        value = self.atom()
        kind, _, pos = self.toks.peek()
        if kind != "^":
            return value
        self.toks.take()
        ekind, exponent, epos = self.toks.take()
        if ekind != "num":
            raise MapSyntaxError("exponent must be a nonnegative integer", epos)
        if exponent > _MAX_EXPONENT:
            raise MapSyntaxError("exponent too large", epos)
        n, d = _ONE, _ONE
        for _ in range(exponent):
            n, d = trim(pmul(n, value[0])), trim(pmul(d, value[1]))
            _check_degree((n, d), epos)
        return (n if n else [], d)

    def atom(self):
        kind, num, pos = self.toks.take()
        if kind == "num":
            return ([Fraction(num)], _ONE)
        if kind == "z":
            return ([Fraction(0), Fraction(1)], _ONE)
        if kind == "(":
            value = self.expr()
            close, _, cpos = self.toks.take()
            if close != ")":
                raise MapSyntaxError("expected ')'", cpos)
            return value
        raise MapSyntaxError("expected a number, 'z' or '('", pos)


def parse_map(text: str) -> RatMap2:
    """Parse an expression into a degree-2 map; exact coefficients.

    Raises MapSyntaxError with a position for syntax errors and for expanded
    degree above 2; an identically degenerate map (shared root, e.g. a
    cancelling factor) raises DegenerateMapError.
    """
    num, den = _Parser(text).parse()
    num, den = trim(num), trim(den)
    if not num:
        raise MapSyntaxError("numerator is identically zero", 0)
    if not den:
        raise MapSyntaxError("denominator is identically zero", 0)
    if degree(num) > 2 or degree(den) > 2:
        raise MapSyntaxError(
            f"degree {max(degree(num), degree(den))} after expansion exceeds 2", 0
        )
    if degree(den) == 0 and den[0] != 1:
        # a polynomial stays a polynomial: constant denominators become 1
        num = [c / den[0] for c in num]
        den = [Fraction(1)]
    return RatMap2.from_affine(num, den)


def _format_coeff(c, power_text: str) -> str:
    if isinstance(c, QuadExt):
        s = element_to_str(c)
        wrapped = f"({s})" if (c.a != 0 and c.b != 0) else s
        return f"{wrapped}*{power_text}" if power_text else wrapped
    c = Fraction(c)
    if not power_text:
        return str(c)
    if c == 1:
        return power_text
    if c == -1:
        return f"-{power_text}"
    return f"{c}*{power_text}"


def format_poly(coeffs_ascending) -> str:
    """Render an affine polynomial like z^2-2*z or 2*sqrt(2)*z-1."""
    cs = trim(list(coeffs_ascending))
    if not cs:
        return "0"
    parts = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if c == 0:
            continue
        power = "z^" + str(k) if k >= 2 else ("z" if k == 1 else "")
        text = _format_coeff(c, power)
        if parts and not text.startswith("-"):
            parts.append("+" + text)
        else:
            parts.append(text)
    return "".join(parts)


def format_map(m: RatMap2) -> str:
    """Canonical printable expression; parse_map round-trips it over Q."""
    num = format_poly(m.affine_num())
    den = format_poly(m.affine_den())
    if den == "1":
        return num
    return f"({num})/({den})"
