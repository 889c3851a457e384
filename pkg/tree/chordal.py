"""
Chordal Distance & Coarse-Graining Classes
==========================================
On K^× × K:

    u(z0, z; w0, w) = |(z0 − w0, z − w)|_s^2 / |z0 · w0|

with |·|_s the sup of the two coordinate norms, both measured with the
one extended norm of K.  u is handled as its exponent t (u = p^t),
with u = 0 encoded as t = −∞, so the ≤ thresholds are decided exactly.

    (z0, z) ∼   (w0, w)   iff  t ≤ 0
    (z0, z) ∼_m (w0, w)   iff  t ≤ −2m/e       (|π|^(2m) = p^(−2m/e))

A class B(z0, z) has the unique representative z0 = p^ω,
ω = v(z0) ∈ (1/e)Z, with z cut to its digits strictly below π-index
e·ω.  At level m the representative also carries the m digits of z0
and of z starting at π-index e·ω.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from padic.element import DigitExpansion, PAdicElement, digits
from padic.errors import DomainError, SpecMismatchError
from padic.exponent import NEG_INF, RationalExponent
from padic.residue_field import ResidueElement


@dataclass(frozen=True, eq=False)
class ProductPoint:
    """A point (z0, z) of K^× × K."""
    z0: PAdicElement
    z: PAdicElement

    def __post_init__(self):
        if not self.z0.spec.same_field(self.z.spec):
            raise SpecMismatchError("z0 and z must come from the same extension")
        if self.z0.is_zero:
            raise DomainError("first coordinate z0 must be nonzero")

    @property
    def spec(self):
        return self.z0.spec


@dataclass(frozen=True)
class ClassRep:
    """Canonical representative of B(z0, z) (level 0) or B_m(z0, z)."""
    omega: Fraction
    digit_word: DigitExpansion
    z0_word: Tuple[ResidueElement, ...] = field(default=())
    z_word: Tuple[ResidueElement, ...] = field(default=())

    @property
    def level(self) -> int:
        return len(self.z0_word)


def sup_norm_exponent(a: PAdicElement, b: PAdicElement) -> RationalExponent:
    return max(a.norm_exponent(), b.norm_exponent())


def chordal_u_exponent(zp: ProductPoint, wp: ProductPoint) -> RationalExponent:
    if not zp.spec.same_field(wp.spec):
        raise SpecMismatchError("points come from different extensions")
    sup = sup_norm_exponent(zp.z0 - wp.z0, zp.z - wp.z)
    if sup == NEG_INF:
        return NEG_INF
    return 2 * sup - zp.z0.norm_exponent() - wp.z0.norm_exponent()


def equivalent(zp: ProductPoint, wp: ProductPoint) -> bool:
    return chordal_u_exponent(zp, wp) <= 0


def level_threshold(e: int, m: int) -> Fraction:
    if m < 0:
        raise DomainError(f"refinement level must be >= 0, got {m}")
    return Fraction(-2 * m, e)


def equivalent_m(zp: ProductPoint, wp: ProductPoint, m: int) -> bool:
    return chordal_u_exponent(zp, wp) <= level_threshold(zp.spec.e, m)


def word_below(z: PAdicElement, h: int) -> DigitExpansion:
    """Digits of z from its valuation up to (excluding) π-index h."""
    idx = z.val_index()
    lo = h if idx is None else min(idx, h)
    return digits(z, lo, h)


def _window(x: PAdicElement, lo: int, m: int) -> Tuple[ResidueElement, ...]:
    dx = digits(x, lo, lo + m)
    return tuple(dx.digit_at(i) for i in range(lo, lo + m))


def canonical_class(zp: ProductPoint, m: int = 0) -> ClassRep:
    """Representative of the ∼ class (m = 0) or the ∼_m class of zp."""
    if m < 0:
        raise DomainError(f"refinement level must be >= 0, got {m}")
    omega = zp.z0.valuation()
    h = int(omega * zp.spec.e)
    rep = ClassRep(omega=omega, digit_word=word_below(zp.z, h))
    if m == 0:
        return rep
    return ClassRep(
        omega=omega,
        digit_word=rep.digit_word,
        z0_word=_window(zp.z0, h, m),
        z_word=_window(zp.z, h, m),
    )
