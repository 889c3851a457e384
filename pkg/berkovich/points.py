"""
Berkovich Points & the W Coordinates
====================================
A BerkPoint is a closed disk B(c, p^t) over the session field K:

    t = −∞           type I   (the point c itself)
    t ∈ Q            type II  (value group of C_p is Q)
    t ∈ Q + Q√2, t ∉ Q       type III

plus the type I point at ∞ (no center, no radius).

φ sends the disk (a, p^t) to the W point (ω = −t, center a), i.e.
(z0, z) = (p^ω, a); φ⁻¹ reverses it.  The trunk ends are the sentinels
ω = +∞ (type I at the center, radius 0) and ω = −∞ (the point at ∞).

    join(x, y)   smallest disk containing both:
                 t = max(t_x, t_y, log_p|c_x − c_y|)
    ρ(x, y)      (t_join − t_x) + (t_join − t_y)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from padic.element import PAdicElement, from_digits, zero
from padic.errors import DomainError, LiteralParseError, SpecMismatchError
from padic.extension import ExtensionSpec
from padic.literals import format_element, parse_element, parse_keyed
from berkovich.ext import NEG_INF, POS_INF, Ext, ext_max, format_ext, parse_ext
from tree.chordal import word_below


class PointType(str, enum.Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"


@dataclass(frozen=True, eq=False)
class BerkPoint:
    center: Optional[PAdicElement]
    radius_exp: Ext = NEG_INF

    def __post_init__(self):
        object.__setattr__(self, "radius_exp", Ext.of(self.radius_exp))
        if self.center is None and self.radius_exp != POS_INF:
            raise DomainError("only the point at infinity may omit its center")
        if self.center is not None and self.radius_exp == POS_INF:
            raise DomainError("a disk of infinite radius is the point at infinity")

    @property
    def is_infinity(self) -> bool:
        return self.center is None

    def __repr__(self) -> str:
        if self.is_infinity:
            return "BerkPoint(inf)"
        return f"BerkPoint(center={format_element(self.center)!r}, radius_exp={self.radius_exp})"


@dataclass(frozen=True, eq=False)
class WPoint:
    omega: Ext
    center: Optional[PAdicElement]

    def __post_init__(self):
        object.__setattr__(self, "omega", Ext.of(self.omega))
        if self.center is None and self.omega != NEG_INF:
            raise DomainError("only the trunk end at omega = -inf may omit its center")


# ======================================================================
# Constructors
# ======================================================================

def point_at_infinity() -> BerkPoint:
    return BerkPoint(None, POS_INF)


def trunk_point(spec: ExtensionSpec, omega) -> BerkPoint:
    """The disk B(0, p^(−ω)) on the trunk path from 0 to ∞."""
    return BerkPoint(zero(spec), -Ext.of(omega))


def gauss_point(spec: ExtensionSpec) -> BerkPoint:
    return trunk_point(spec, 0)


# ======================================================================
# Classification & disk relations
# ======================================================================

def classify(pt: BerkPoint) -> PointType:
    if pt.is_infinity or pt.radius_exp == NEG_INF:
        return PointType.TYPE_I
    if pt.radius_exp.is_rational:
        return PointType.TYPE_II
    return PointType.TYPE_III


def _finite_pair(x: BerkPoint, y: BerkPoint, what: str) -> None:
    if x.is_infinity or y.is_infinity:
        raise DomainError(f"{what} is undefined at the point at infinity")
    if not x.center.spec.same_field(y.center.spec):
        raise SpecMismatchError("disks are centered in different extensions")


def _gap(x: BerkPoint, y: BerkPoint) -> Ext:
    return Ext.of((x.center - y.center).norm_exponent())


def contains(outer: BerkPoint, inner: BerkPoint) -> bool:
    _finite_pair(outer, inner, "containment")
    return inner.radius_exp <= outer.radius_exp and _gap(outer, inner) <= outer.radius_exp


def same_disk(x: BerkPoint, y: BerkPoint) -> bool:
    if x.is_infinity or y.is_infinity:
        return x.is_infinity and y.is_infinity
    return contains(x, y) and contains(y, x)


def join(x: BerkPoint, y: BerkPoint) -> BerkPoint:
    _finite_pair(x, y, "join")
    return BerkPoint(x.center, ext_max(x.radius_exp, y.radius_exp, _gap(x, y)))


def rho(x: BerkPoint, y: BerkPoint) -> Ext:
    for pt in (x, y):
        if classify(pt) is PointType.TYPE_I:
            raise DomainError("rho is only defined between type II / III points")
    t3 = join(x, y).radius_exp
    return (t3 - x.radius_exp) + (t3 - y.radius_exp)


def nested_disk_point(chain: Sequence[BerkPoint]) -> BerkPoint:
    """The point a finite descending chain of disks closes down on."""
    if not chain:
        raise DomainError("a disk chain needs at least one disk")
    for outer, inner in zip(chain, chain[1:]):
        if not contains(outer, inner):
            raise DomainError(f"chain is not nested: {outer!r} does not contain {inner!r}")
    return chain[-1]


# ======================================================================
# φ / φ⁻¹
# ======================================================================

def _canonical_center(center: PAdicElement, omega: Ext) -> PAdicElement:
    """Center cut to its digits below the disk boundary index ceil(e·ω)."""
    if omega == POS_INF:
        return center
    h = omega.scale(center.spec.e).ceil()
    return from_digits(word_below(center, h))


def phi(pt: BerkPoint, canonical: bool = False) -> WPoint:
    if pt.is_infinity:
        return WPoint(NEG_INF, None)
    omega = -pt.radius_exp
    center = _canonical_center(pt.center, omega) if canonical else pt.center
    return WPoint(omega, center)


def phi_inv(w: WPoint) -> BerkPoint:
    if w.omega == NEG_INF:
        return point_at_infinity()
    return BerkPoint(w.center, -w.omega)


def w_equivalent(a: WPoint, b: WPoint) -> bool:
    if a.center is None or b.center is None:
        return a.center is None and b.center is None
    if a.omega != b.omega:
        return False
    return Ext.of((a.center - b.center).norm_exponent()) <= -a.omega


def type3_from_path(q, w: Ext, z_unit: PAdicElement) -> BerkPoint:
    """The type III point (p^(w+q), p^q·z) reached by leaving the trunk at q.

    Its ρ-distance from the trunk disk at exponent q is exactly w.
    """
    w = Ext.of(w)
    if w.is_rational or not w.is_finite:
        raise DomainError(f"path length must be irrational, got {w}")
    if w <= 0:
        raise DomainError(f"path length must be positive, got {w}")
    if z_unit.is_zero or z_unit.valuation() != 0:
        raise DomainError("z must be a unit")
    spec = z_unit.spec
    step = Fraction(q) * spec.e
    if step.denominator != 1:
        raise DomainError(f"q = {q} is not in (1/{spec.e})Z")
    return phi_inv(WPoint(w + Fraction(q), z_unit.mul_pi(int(step))))


# ======================================================================
# Serialization
# ======================================================================

def point_to_dict(pt: BerkPoint) -> dict:
    return {
        "center": None if pt.is_infinity else format_element(pt.center),
        "radius_exp": format_ext(pt.radius_exp),
        "type": classify(pt).value,
    }


def point_from_dict(spec: ExtensionSpec, doc: dict) -> BerkPoint:
    if doc.get("center") is None:
        return point_at_infinity()
    return BerkPoint(parse_element(spec, doc["center"]), parse_ext(doc["radius_exp"]))


def wpoint_to_dict(w: WPoint) -> dict:
    return {
        "omega": format_ext(w.omega),
        "center": None if w.center is None else format_element(w.center),
    }


def parse_berk_literal(spec: ExtensionSpec, text: str) -> BerkPoint:
    """``center=<element>,rexp=<ext>`` or ``inf``."""
    if text.strip().lower() in ("inf", "infinity"):
        return point_at_infinity()
    fields = parse_keyed(text, ("center", "rexp"))
    if "center" not in fields:
        raise LiteralParseError(f"disk literal needs a center: '{text}'")
    rexp = parse_ext(fields.get("rexp", "-inf"))
    return BerkPoint(parse_element(spec, fields["center"]), rexp)


def parse_w_literal(spec: ExtensionSpec, text: str) -> WPoint:
    """``omega=<ext>,center=<element>``; ``omega=-inf`` needs no center."""
    fields = parse_keyed(text, ("omega", "center"))
    omega = parse_ext(fields.get("omega", "0"))
    if omega == NEG_INF:
        return WPoint(NEG_INF, None)
    if "center" not in fields:
        raise LiteralParseError(f"W literal needs a center: '{text}'")
    return WPoint(omega, parse_element(spec, fields["center"]))
