"""
Disk seminorms on K[T].

    |f|_B(a, p^t)  =  sup_{z ∈ B} |f(z)|
                   =  max_i |b_i| · p^(i·t)      with f(T) = Σ b_i (T − a)^i

gauss_seminorm evaluates the right-hand side exactly in exponent form.
seminorm_sampled_sup evaluates the left-hand side on seeded points of
the disk and only ever bounds it from below.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from config import config
from padic.element import PAdicElement, from_rational, residue_from_code, sample_element, zero
from padic.errors import DomainError, SpecMismatchError
from padic.extension import ExtensionSpec
from berkovich.ext import NEG_INF, Ext, ext_max
from berkovich.points import BerkPoint


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Σ coeffs[i]·T^i over K (low degree first)."""
    spec: ExtensionSpec
    coeffs: Tuple[PAdicElement, ...]

    @classmethod
    def from_rationals(cls, spec: ExtensionSpec, values: Sequence) -> "Polynomial":
        out = []
        for v in values:
            v = Fraction(v)
            out.append(from_rational(spec, v.numerator, v.denominator))
        return cls(spec, tuple(out))

    @property
    def degree(self) -> int:
        for i in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[i].is_zero:
                return i
        return -1

    @property
    def is_zero(self) -> bool:
        return self.degree < 0

    def _check(self, other: "Polynomial") -> None:
        if not self.spec.same_field(other.spec):
            raise SpecMismatchError("polynomials live over different extensions")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = zero(self.spec)
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return Polynomial(self.spec, tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(self.spec, ())
        out: List[PAdicElement] = [zero(self.spec)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.spec, tuple(out))

    def evaluate(self, z: PAdicElement) -> PAdicElement:
        acc = zero(self.spec)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def taylor_shift(self, a: PAdicElement) -> "Polynomial":
        """Coefficients b_i with f(T) = Σ b_i (T − a)^i."""
        b = list(self.coeffs)
        n = len(b)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                b[j] = b[j] + a * b[j + 1]
        return Polynomial(self.spec, tuple(b))


def gauss_seminorm(f: Polynomial, pt: BerkPoint) -> Ext:
    """log_p |f|_B as an exact Ext (−∞ for the zero polynomial)."""
    if pt.is_infinity:
        raise DomainError("seminorm is undefined at the point at infinity")
    if f.is_zero:
        return NEG_INF
    if pt.radius_exp == NEG_INF:
        return Ext.of(f.evaluate(pt.center).norm_exponent())
    shifted = f.taylor_shift(pt.center)
    terms = [
        Ext.of(c.norm_exponent()) + pt.radius_exp.scale(i)
        for i, c in enumerate(shifted.coeffs)
        if not c.is_zero
    ]
    return ext_max(*terms) if terms else NEG_INF


def disk_samples(pt: BerkPoint, n_samples: int, seed: int) -> List[PAdicElement]:
    """Seeded points of the disk: the center, then the boundary sphere
    through every nonzero leading digit, then deeper random offsets.
    """
    spec = pt.center.spec
    boundary = (-pt.radius_exp).scale(spec.e).ceil()
    samples = [pt.center]
    for code in range(1, spec.q):
        if len(samples) >= n_samples:
            return samples
        lead = residue_from_code(spec, code)
        offset = sample_element(spec, Fraction(boundary, spec.e), seed + code, leading=lead)
        samples.append(pt.center + offset)

    rng = np.random.default_rng(seed)
    span = config.sampling.disk_sample_valuation_span * spec.e
    while len(samples) < n_samples:
        index = boundary + int(rng.integers(0, span + 1))
        sub_seed = int(rng.integers(0, 2 ** 31))
        samples.append(pt.center + sample_element(spec, Fraction(index, spec.e), sub_seed))
    return samples


def seminorm_sampled_sup(f: Polynomial, pt: BerkPoint, n_samples: int, seed: int) -> Ext:
    if pt.is_infinity:
        raise DomainError("seminorm is undefined at the point at infinity")
    if n_samples < 1:
        raise DomainError(f"need at least one sample, got {n_samples}")
    if f.is_zero:
        return NEG_INF
    if pt.radius_exp == NEG_INF:
        return Ext.of(f.evaluate(pt.center).norm_exponent())
    if not pt.radius_exp.is_rational:
        raise DomainError("sampled sup needs a rational radius (a type II disk)")
    return ext_max(*(Ext.of(f.evaluate(z).norm_exponent())
                     for z in disk_samples(pt, n_samples, seed)))
