"""
Exact Radius Exponents
======================
Ext is the ordered field slice Q + Q·√2 plus the two sentinels ±∞.
Rational values are type II radius exponents; values with a nonzero
√2 part are type III.  Ordering is decided exactly:

    sign(a + b√2) = sign(a)             if b = 0
                    sign(b)             if a = 0 or sign(a) = sign(b)
                    by a² against 2b²   otherwise

Wire form:  ``3/2``, ``sqrt2``, ``-1/3*sqrt2``, ``1/2 + 3*sqrt2``,
``1 - sqrt2``, ``+inf``, ``-inf``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from padic.errors import DomainError, LiteralParseError
from padic.exponent import is_infinite

Number = Union[int, Fraction, float, "Ext"]

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_TERMS = re.compile(r"[+-]?[^+-]+")


@total_ordering
@dataclass(frozen=True)
class Ext:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    inf: int = 0

    def __post_init__(self):
        if self.inf not in (-1, 0, 1):
            raise ValueError(f"inf flag must be -1, 0 or 1, got {self.inf}")
        if self.inf:
            object.__setattr__(self, "a", Fraction(0))
            object.__setattr__(self, "b", Fraction(0))
        else:
            object.__setattr__(self, "a", Fraction(self.a))
            object.__setattr__(self, "b", Fraction(self.b))

    # ------------------------------------------------------------------
    @classmethod
    def of(cls, x: Number) -> "Ext":
        if isinstance(x, Ext):
            return x
        if is_infinite(x):
            return POS_INF if x > 0 else NEG_INF
        return cls(Fraction(x))

    @property
    def is_finite(self) -> bool:
        return self.inf == 0

    @property
    def is_rational(self) -> bool:
        return self.is_finite and self.b == 0

    def sign(self) -> int:
        if self.inf:
            return self.inf
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0 or (a > 0) == (b > 0):
            return 1 if b > 0 else -1
        if a > 0:
            return 1 if a * a > 2 * b * b else -1
        return 1 if 2 * b * b > a * a else -1

    def ceil(self) -> int:
        if not self.is_finite:
            raise DomainError("ceil of an infinite exponent")
        if self.b == 0:
            return math.ceil(self.a)
        n = math.ceil(float(self.a) + float(self.b) * math.sqrt(2))
        while Ext(n - 1) >= self:
            n -= 1
        while Ext(n) < self:
            n += 1
        return n

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is not rational")
        return self.a

    # ------------------------------------------------------------------
    def __neg__(self) -> "Ext":
        if self.inf:
            return Ext(inf=-self.inf)
        return Ext(-self.a, -self.b)

    def __add__(self, other: Number) -> "Ext":
        other = Ext.of(other)
        if self.inf or other.inf:
            if self.inf and other.inf and self.inf != other.inf:
                raise DomainError("+inf + -inf is undefined")
            return Ext(inf=self.inf or other.inf)
        return Ext(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "Ext":
        return self + (-Ext.of(other))

    def __rsub__(self, other: Number) -> "Ext":
        return Ext.of(other) - self

    def scale(self, k) -> "Ext":
        """k·x for a rational k."""
        k = Fraction(k)
        if self.inf:
            if k == 0:
                raise DomainError("0 * inf is undefined")
            return Ext(inf=self.inf if k > 0 else -self.inf)
        return Ext(self.a * k, self.b * k)

    def __eq__(self, other) -> bool:
        try:
            other = Ext.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return (self.a, self.b, self.inf) == (other.a, other.b, other.inf)

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.inf))

    def __lt__(self, other: Number) -> bool:
        other = Ext.of(other)
        if self.inf or other.inf:
            return self.inf < other.inf
        return (self - other).sign() < 0

    def __str__(self) -> str:
        return format_ext(self)

    def __repr__(self) -> str:
        return f"Ext({format_ext(self)!r})"


ZERO = Ext()
SQRT2 = Ext(0, 1)
POS_INF = Ext(inf=1)
NEG_INF = Ext(inf=-1)


def ext_max(*xs: Number) -> Ext:
    return max(Ext.of(x) for x in xs)


def format_ext(x: Ext) -> str:
    if x.inf:
        return "+inf" if x.inf > 0 else "-inf"
    if x.b == 0:
        return str(x.a)
    if x.b == 1:
        root = "sqrt2"
    elif x.b == -1:
        root = "-sqrt2"
    else:
        root = f"{x.b}*sqrt2"
    if x.a == 0:
        return root
    if x.b < 0:
        return f"{x.a} - {root.lstrip('-')}"
    return f"{x.a} + {root}"


def parse_ext(text: str) -> Ext:
    s = text.replace(" ", "").lower()
    if s in ("inf", "+inf"):
        return POS_INF
    if s == "-inf":
        return NEG_INF
    terms = _TERMS.findall(s)
    if not s or "".join(terms) != s:
        raise LiteralParseError(f"Invalid exponent literal: '{text}'")
    a, b = Fraction(0), Fraction(0)
    for term in terms:
        if term.endswith("sqrt2"):
            coef = term[:-len("sqrt2")]
            if coef.endswith("*"):
                coef = coef[:-1]
                if not _RATIONAL.match(coef):
                    raise LiteralParseError(f"Invalid √2 coefficient in '{text}'")
            if coef in ("", "+"):
                b += 1
            elif coef == "-":
                b -= 1
            elif _RATIONAL.match(coef):
                b += Fraction(coef)
            else:
                raise LiteralParseError(f"Invalid √2 coefficient in '{text}'")
        elif _RATIONAL.match(term):
            a += Fraction(term)
        else:
            raise LiteralParseError(f"Invalid term '{term}' in exponent literal '{text}'")
    return Ext(a, b)


def ext_ops(x: Ext, y: Ext, op: str):
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "neg":
        return -x
    if op == "cmp":
        return (x > y) - (x < y)
    if op == "max":
        return ext_max(x, y)
    raise ValueError(f"Unsupported Ext operation: {op}")
