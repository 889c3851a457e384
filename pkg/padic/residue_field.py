"""
Residue Field Arithmetic — F_q as F_p[x] / (residue_poly)
=========================================================
Digits of a π-adic expansion live in the residue field F_q, q = p^f.
Elements are coefficient vectors (c_0, ..., c_{f-1}) with entries in
[0, p), read low-degree first as c_0 + c_1·ζ + ... + c_{f-1}·ζ^{f-1}.

The defining polynomial is the lexicographically smallest monic
irreducible of degree f over Z/p (coefficients compared low-degree
first), found by trial division, so two runs with the same (p, f)
always agree on the field model.  F_p[x] products, remainders and
inverses go through sympy.polys.galoistools.  For f = 1 the polynomial is x
itself and every element is a single digit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_rem

from padic.errors import DomainError


# ======================================================================
# Polynomials over Z/p  (tuples, low degree first; galoistools wants high first)
# ======================================================================

def _to_gf(poly: Sequence[int], p: int) -> List[int]:
    out = [int(c) % p for c in reversed(poly)]
    while out and out[0] == 0:
        out.pop(0)
    return out


def _from_gf(poly: Sequence[int]) -> List[int]:
    return [int(c) for c in reversed(poly)]


def poly_mul_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    return _from_gf(gf_mul(_to_gf(a, p), _to_gf(b, p), p, ZZ))


def poly_rem_monic(a: Sequence[int], divisor: Sequence[int], p: int) -> List[int]:
    """Remainder of ``a`` modulo a monic ``divisor`` over Z/p."""
    return _from_gf(gf_rem(_to_gf(a, p), _to_gf(divisor, p), p, ZZ))


def _monic_polys(p: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """All monic polynomials of ``degree``, lexicographic on (c_0, c_1, ...)."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(low) + (1,)


def has_no_small_factor(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg/2."""
    degree = len(poly) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not poly_rem_monic(poly, divisor, p):
                return False
    return True


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    return len(poly) > 1 and gf_irreducible_p(_to_gf(poly, p), p, ZZ)


def smallest_irreducible(p: int, f: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``f`` over Z/p."""
    if f == 1:
        return (0, 1)
    for candidate in _monic_polys(p, f):
        if has_no_small_factor(candidate, p):
            return candidate
    # Irreducibles exist in every degree; reaching this is a bug.
    raise RuntimeError(f"no monic irreducible of degree {f} found over F_{p}")


# ======================================================================
# Field elements
# ======================================================================

@dataclass(frozen=True)
class ResidueElement:
    coeffs: Tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        if len(self.coeffs) == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


class ResidueField:
    """The finite field F_q with q = p^f, in the polynomial basis {ζ^j}."""

    def __init__(self, p: int, modulus: Sequence[int]):
        self.p = p
        self.modulus = tuple(modulus)
        self.f = len(self.modulus) - 1

    @property
    def q(self) -> int:
        return self.p ** self.f

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------
    def element(self, coeffs: Sequence[int]) -> ResidueElement:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.f:
            raise DomainError(
                f"residue element needs {self.f} coefficients, got {len(coeffs)}"
            )
        if any(c < 0 or c >= self.p for c in coeffs):
            raise DomainError(f"residue coefficients must lie in [0, {self.p}): {coeffs}")
        return ResidueElement(coeffs)

    def zero(self) -> ResidueElement:
        return ResidueElement((0,) * self.f)

    def one(self) -> ResidueElement:
        return ResidueElement((1,) + (0,) * (self.f - 1))

    def from_poly(self, poly: Sequence[int]) -> ResidueElement:
        rem = poly_rem_monic(poly, self.modulus, self.p)
        rem = rem + [0] * (self.f - len(rem))
        return ResidueElement(tuple(rem[: self.f]))

    def elements(self) -> Iterator[ResidueElement]:
        """All q elements in lexicographic coefficient order (zero first)."""
        for coeffs in itertools.product(range(self.p), repeat=self.f):
            yield ResidueElement(tuple(coeffs))

    def nonzero_elements(self) -> Iterator[ResidueElement]:
        for el in self.elements():
            if not el.is_zero():
                yield el

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def add(self, a: ResidueElement, b: ResidueElement) -> ResidueElement:
        return ResidueElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: ResidueElement, b: ResidueElement) -> ResidueElement:
        return ResidueElement(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: ResidueElement) -> ResidueElement:
        return ResidueElement(tuple((-x) % self.p for x in a.coeffs))

    def mul(self, a: ResidueElement, b: ResidueElement) -> ResidueElement:
        if self.f == 1:
            return ResidueElement(((a.coeffs[0] * b.coeffs[0]) % self.p,))
        return self.from_poly(poly_mul_mod_p(a.coeffs, b.coeffs, self.p))

    def inv(self, a: ResidueElement) -> ResidueElement:
        if a.is_zero():
            raise DomainError("cannot invert zero in the residue field")
        s, _, g = gf_gcdex(_to_gf(a.coeffs, self.p), _to_gf(self.modulus, self.p), self.p, ZZ)
        if [int(c) for c in g] != [1]:
            raise RuntimeError(f"{a} shares a factor with the field modulus")
        return self.from_poly(_from_gf(s))

    def __repr__(self) -> str:
        return f"ResidueField(p={self.p}, f={self.f}, modulus={self.modulus})"


def residue_field_ops(field: ResidueField, a: ResidueElement,
                      b: ResidueElement | None, op: str):
    """Dispatch ``op`` in {add, mul, inv, eq} on residue elements."""
    if op == "add":
        return field.add(a, b)
    if op == "mul":
        return field.mul(a, b)
    if op == "inv":
        return field.inv(a)
    if op == "eq":
        return a == b
    raise ValueError(f"Unsupported residue operation: {op}")
