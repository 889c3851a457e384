"""
Finite Extensions K / Q_p
=========================
K is always built as a tower: the unramified extension of degree f
(residue field F_q, generator ζ a root of the lifted residue
polynomial), then the totally ramified layer π^e = p on top of it.

    degree          n = e·f
    value group     (1/e)·Z
    uniformizer     π = p^(1/e)

``make_extension`` is memoised, so two requests for the same
(p, e, f, precision) return the same object.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Tuple

from sympy import isprime

from config import config
from padic.errors import DeskBoundError, DomainError
from padic.residue_field import ResidueField, is_irreducible, smallest_irreducible


@dataclass(frozen=True)
class ExtensionSpec:
    p: int
    e: int
    f: int
    precision: int
    residue_poly: Tuple[int, ...]
    unramified_lift_poly: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def degree(self) -> int:
        return self.e * self.f

    @property
    def value_group_step(self) -> Fraction:
        return Fraction(1, self.e)

    @property
    def relative_cap(self) -> int:
        """π-places carried past the leading digit of a freshly built element."""
        return self.e * (-(-self.precision // self.e) + 1)

    @property
    def kind(self) -> str:
        if self.e == 1 and self.f == 1:
            return "base"
        if self.e == 1:
            return "unramified"
        if self.f == 1:
            return "totally_ramified"
        return "partially_ramified"

    @cached_property
    def residue_field(self) -> ResidueField:
        return ResidueField(self.p, self.residue_poly)

    def same_field(self, other: "ExtensionSpec") -> bool:
        return (self.p, self.e, self.f) == (other.p, other.e, other.f)

    def header(self) -> dict:
        return {"p": self.p, "e": self.e, "f": self.f}

    def __str__(self) -> str:
        return f"K(p={self.p}, e={self.e}, f={self.f}, prec={self.precision})"


@lru_cache(maxsize=None)
def make_extension(p: int, e: int, f: int, precision: int) -> ExtensionSpec:
    if not isinstance(p, int) or not isprime(p):
        raise DomainError(f"p must be prime, got {p}")
    for name, value in (("e", e), ("f", f), ("precision", precision)):
        if not isinstance(value, int) or value < 1:
            raise DomainError(f"{name} must be a positive integer, got {value}")
    if p ** f > config.bounds.max_residue_order:
        raise DeskBoundError(
            f"residue field order p^f = {p}^{f} exceeds {config.bounds.max_residue_order}"
        )

    residue_poly = smallest_irreducible(p, f)
    if f > 1 and not is_irreducible(residue_poly, p):
        raise RuntimeError(f"residue polynomial {residue_poly} failed irreducibility re-check")

    return ExtensionSpec(
        p=p,
        e=e,
        f=f,
        precision=precision,
        residue_poly=residue_poly,
        unramified_lift_poly=tuple(residue_poly),
    )
