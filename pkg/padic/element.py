"""
Elements of K at finite π-adic precision
========================================
Storage is a coefficient vector over the tower basis {ζ^j · π^k}:

    x = p^shift · Σ_{k<e, j<f} c[k·f + j] · ζ^j · π^k ,    π^e = p

known modulo π^cap (``cap`` is an absolute π-index; ``None`` marks an
exact element).  Coefficient c_{j,k} is kept modulo p^t_k with
t_k = ceil((cap − e·shift − k)/e), which is exactly reduction modulo
π^cap, so two representatives of the same element at the same cap are
identical.  The shift is normalised so that some coefficient is a unit.

Digit expansions (the S_μ^ω sets) are an extraction, not the storage
format: ``digits`` peels the leading residue digit off repeatedly, and
``from_digits`` sums lift(a_m)·π^m back up.

Precision rules:
    add / sub   cap = min(cap_x, cap_y)
    mul         cap = min(cap_x + e·v(y), cap_y + e·v(x))
    invert      cap = (cap_x − e·v(x)) − e·v(x)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from padic.errors import DomainError, PrecisionError, SpecMismatchError
from padic.exponent import INF, NEG_INF, RationalExponent
from padic.extension import ExtensionSpec
from padic.residue_field import ResidueElement


# ======================================================================
# Integer helpers
# ======================================================================

def vp_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _reduce(spec: ExtensionSpec, shift: int, coeffs: List[int],
            cap: Optional[int]) -> List[int]:
    if cap is None:
        return coeffs
    e, f, p = spec.e, spec.f, spec.p
    rel = cap - e * shift
    out = list(coeffs)
    for k in range(e):
        t = _ceil_div(rel - k, e)
        for j in range(f):
            i = k * f + j
            out[i] = out[i] % (p ** t) if t > 0 else 0
    return out


def _mul_coeffs(spec: ExtensionSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Product in Z_p[ζ][π] with ζ reduced by the lift polynomial and π^e = p."""
    e, f, p = spec.e, spec.f, spec.p
    g = spec.unramified_lift_poly
    rows = [[0] * (2 * f - 1) for _ in range(2 * e - 1)]
    for k1 in range(e):
        ra = a[k1 * f:(k1 + 1) * f]
        if not any(ra):
            continue
        for k2 in range(e):
            rb = b[k2 * f:(k2 + 1) * f]
            if not any(rb):
                continue
            row = rows[k1 + k2]
            for j1, x in enumerate(ra):
                if x == 0:
                    continue
                for j2, y in enumerate(rb):
                    row[j1 + j2] += x * y

    # ζ^f = −Σ g_j ζ^j
    for row in rows:
        for d in range(2 * f - 2, f - 1, -1):
            c = row[d]
            if c:
                row[d] = 0
                for j in range(f):
                    row[d - f + j] -= c * g[j]

    # π^(e+k) = p·π^k
    for k in range(2 * e - 2, e - 1, -1):
        row = rows[k]
        low = rows[k - e]
        for j in range(f):
            low[j] += p * row[j]

    out: List[int] = []
    for k in range(e):
        out.extend(rows[k][:f])
    return out


# ======================================================================
# PAdicElement
# ======================================================================

class PAdicElement:
    """An element of K known modulo π^cap (immutable)."""

    __slots__ = ("spec", "shift", "coeffs", "cap")

    def __init__(self, spec: ExtensionSpec, shift: int, coeffs: Sequence[int],
                 cap: Optional[int]):
        coeffs = _reduce(spec, shift, [int(c) for c in coeffs], cap)
        if any(coeffs):
            p = spec.p
            g = min(vp_int(c, p) for c in coeffs if c)
            if g:
                div = p ** g
                coeffs = [c // div for c in coeffs]
                shift += g
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "cap", cap)

    def __setattr__(self, name, value):
        raise AttributeError("PAdicElement is immutable")

    # ------------------------------------------------------------------
    # Basic properties
    # ------------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_exact(self) -> bool:
        return self.cap is None

    @property
    def pi_shift(self) -> int:
        return self.spec.e * self.shift

    def val_index(self) -> Optional[int]:
        """e·v(x) as an integer π-index; None for zero."""
        if self.is_zero:
            return None
        return self.pi_shift + self._lead_row()

    def _lead_row(self) -> int:
        p, f = self.spec.p, self.spec.f
        for k in range(self.spec.e):
            if any(c % p for c in self.coeffs[k * f:(k + 1) * f]):
                return k
        raise AssertionError("normalised nonzero element without a unit coefficient")

    def valuation(self) -> RationalExponent:
        idx = self.val_index()
        return INF if idx is None else Fraction(idx, self.spec.e)

    def norm_exponent(self) -> RationalExponent:
        v = self.valuation()
        return NEG_INF if v == INF else -v

    def leading_digit(self) -> Tuple[int, ResidueElement]:
        """(π-index, residue digit) of the leading term of a nonzero element."""
        if self.is_zero:
            raise DomainError("zero has no leading digit")
        k = self._lead_row()
        f, p = self.spec.f, self.spec.p
        digit = ResidueElement(tuple(c % p for c in self.coeffs[k * f:(k + 1) * f]))
        return self.pi_shift + k, digit

    # ------------------------------------------------------------------
    # Precision handling
    # ------------------------------------------------------------------
    def with_cap(self, cap: Optional[int]) -> "PAdicElement":
        """Truncate to at most ``cap`` π-places (never raises precision)."""
        new = _min_cap(self.cap, cap)
        if new == self.cap:
            return self
        return PAdicElement(self.spec, self.shift, self.coeffs, new)

    def _relift(self, cap: Optional[int]) -> "PAdicElement":
        """Treat the stored representative as known modulo π^cap."""
        return PAdicElement(self.spec, self.shift, self.coeffs, cap)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def _check(self, other: "PAdicElement") -> None:
        if not isinstance(other, PAdicElement):
            raise TypeError(f"expected PAdicElement, got {type(other).__name__}")
        if not self.spec.same_field(other.spec):
            raise SpecMismatchError(f"cannot combine elements of {self.spec} and {other.spec}")

    def _aligned(self, shift: int) -> List[int]:
        scale = self.spec.p ** (self.shift - shift)
        return [c * scale for c in self.coeffs]

    def _add(self, other: "PAdicElement", sign: int) -> "PAdicElement":
        self._check(other)
        shift = min(self.shift, other.shift)
        a = self._aligned(shift)
        b = other._aligned(shift)
        coeffs = [x + sign * y for x, y in zip(a, b)]
        return PAdicElement(self.spec, shift, coeffs, _min_cap(self.cap, other.cap))

    def __add__(self, other: "PAdicElement") -> "PAdicElement":
        return self._add(other, 1)

    def __sub__(self, other: "PAdicElement") -> "PAdicElement":
        return self._add(other, -1)

    def __neg__(self) -> "PAdicElement":
        return PAdicElement(self.spec, self.shift, [-c for c in self.coeffs], self.cap)

    def __mul__(self, other: "PAdicElement") -> "PAdicElement":
        self._check(other)
        if (self.is_zero and self.is_exact) or (other.is_zero and other.is_exact):
            return zero(self.spec)
        cap = _min_cap(
            _cap_plus(self.cap, other._index_or_cap()),
            _cap_plus(other.cap, self._index_or_cap()),
        )
        coeffs = _mul_coeffs(self.spec, self.coeffs, other.coeffs)
        return PAdicElement(self.spec, self.shift + other.shift, coeffs, cap)

    def _index_or_cap(self) -> Optional[int]:
        idx = self.val_index()
        return idx if idx is not None else self.cap

    def mul_pi(self, n: int) -> "PAdicElement":
        """x · π^n for any integer n."""
        e, f, p = self.spec.e, self.spec.f, self.spec.p
        a, r = divmod(n, e)
        coeffs = [0] * (e * f)
        for k in range(e):
            nk = k + r
            for j in range(f):
                c = self.coeffs[k * f + j]
                if not c:
                    continue
                if nk < e:
                    coeffs[nk * f + j] += c
                else:
                    coeffs[(nk - e) * f + j] += p * c
        cap = None if self.cap is None else self.cap + n
        return PAdicElement(self.spec, self.shift + a, coeffs, cap)

    def invert(self) -> "PAdicElement":
        if self.is_zero:
            raise DomainError("cannot invert zero at the carried precision")
        m = self.val_index()
        rel = self.cap - m if self.cap is not None else self.spec.relative_cap
        unit = self.mul_pi(-m)._relift(rel) if self.cap is None else self.mul_pi(-m)

        field = self.spec.residue_field
        _, d = unit.leading_digit()
        z = monomial(self.spec, field.inv(d), 0)._relift(1)
        two = constant(self.spec, 2)
        n = 1
        while n < rel:
            n = min(2 * n, rel)
            zr = z._relift(n)
            z = (zr * (two - unit.with_cap(n) * zr)).with_cap(n)
        return z.mul_pi(-m)

    # ------------------------------------------------------------------
    # Comparison
    # ------------------------------------------------------------------
    def equals(self, other: "PAdicElement") -> bool:
        """Equality at shared precision."""
        self._check(other)
        return (self - other).is_zero

    def __eq__(self, other) -> bool:
        if not isinstance(other, PAdicElement):
            return NotImplemented
        if not self.spec.same_field(other.spec):
            return False
        return self.equals(other)

    __hash__ = None

    def __repr__(self) -> str:
        from padic.literals import format_element
        return f"PAdicElement({format_element(self)!r}, cap={self.cap})"


def _min_cap(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _cap_plus(cap: Optional[int], n: Optional[int]) -> Optional[int]:
    if cap is None or n is None:
        return None
    return cap + n


# ======================================================================
# Digit expansions
# ======================================================================

@dataclass(frozen=True)
class DigitExpansion:
    """Digits a_lo, ..., a_{hi-1} of Σ lift(a_m)·π^m.

    The leading stored digit is nonzero; an expansion with no stored
    digits denotes 0 and sits at lo = hi.
    """
    spec: ExtensionSpec
    lo: int
    digits: Tuple[ResidueElement, ...] = ()

    @property
    def hi(self) -> int:
        return self.lo + len(self.digits)

    def is_zero(self) -> bool:
        return not self.digits

    def __len__(self) -> int:
        return len(self.digits)

    def digit_at(self, index: int) -> ResidueElement:
        if self.lo <= index < self.hi:
            return self.digits[index - self.lo]
        return self.spec.residue_field.zero()

    def truncated(self, hi: int) -> "DigitExpansion":
        """Digits strictly below π-index ``hi``."""
        if hi <= self.lo:
            return DigitExpansion(self.spec, hi, ())
        return DigitExpansion(self.spec, self.lo, self.digits[: hi - self.lo])

    def extended(self, digit: ResidueElement) -> "DigitExpansion":
        """Append ``digit`` at index hi (a zero digit on an empty word stays empty)."""
        if not self.digits:
            if digit.is_zero():
                return DigitExpansion(self.spec, self.hi + 1, ())
            return DigitExpansion(self.spec, self.hi, (digit,))
        return DigitExpansion(self.spec, self.lo, self.digits + (digit,))

    def sort_key(self) -> tuple:
        return (self.lo, tuple(d.coeffs for d in self.digits))

    def _identity(self) -> tuple:
        spec = self.spec
        return (spec.p, spec.e, spec.f, self.lo, self.digits)

    # words agree across working precisions of one field
    def __eq__(self, other) -> bool:
        if not isinstance(other, DigitExpansion):
            return NotImplemented
        return self._identity() == other._identity()

    def __hash__(self) -> int:
        return hash(self._identity())

    def __str__(self) -> str:
        return "[" + ",".join(str(d) for d in self.digits) + "]"


def digits(x: PAdicElement, lo: int, hi: Optional[int]) -> DigitExpansion:
    """Canonical expansion of ``x`` restricted to π-indices [lo, hi).

    ``hi=None`` means "up to the carried precision"; for an exact element
    that is relative_cap places past the leading digit.
    """
    if hi is None:
        if x.cap is not None:
            hi = x.cap
        else:
            idx = x.val_index()
            hi = lo if idx is None else max(lo, idx + x.spec.relative_cap)
    if x.cap is not None and hi > x.cap:
        raise PrecisionError(
            f"digit window [{lo}, {hi}) exceeds carried precision (cap {x.cap})"
        )
    found: Dict[int, ResidueElement] = {}
    y = x
    while not y.is_zero:
        m, d = y.leading_digit()
        if m >= hi:
            break
        if m >= lo:
            found[m] = d
        y = y - monomial(x.spec, d, m)
    if not found:
        return DigitExpansion(x.spec, max(lo, hi), ())
    start = min(found)
    zero_digit = x.spec.residue_field.zero()
    word = tuple(found.get(i, zero_digit) for i in range(start, hi))
    return DigitExpansion(x.spec, start, word)


def from_digits(dx: DigitExpansion) -> PAdicElement:
    """Σ lift(a_m)·π^m, known modulo π^hi."""
    spec = dx.spec
    e, f, p = spec.e, spec.f, spec.p
    shift = dx.lo // e
    coeffs = [0] * (e * f)
    for offset, digit in enumerate(dx.digits):
        a, r = divmod(dx.lo + offset - e * shift, e)
        scale = p ** a
        for j, c in enumerate(digit.coeffs):
            coeffs[r * f + j] += c * scale
    return PAdicElement(spec, shift, coeffs, dx.hi)


# ======================================================================
# Constructors
# ======================================================================

def zero(spec: ExtensionSpec) -> PAdicElement:
    """The exact zero."""
    return PAdicElement(spec, 0, [0] * (spec.e * spec.f), None)


def constant(spec: ExtensionSpec, n: int) -> PAdicElement:
    """The exact integer ``n``."""
    coeffs = [0] * (spec.e * spec.f)
    coeffs[0] = n
    return PAdicElement(spec, 0, coeffs, None)


def monomial(spec: ExtensionSpec, digit: ResidueElement, index: int) -> PAdicElement:
    """The exact element lift(digit)·π^index."""
    a, r = divmod(index, spec.e)
    coeffs = [0] * (spec.e * spec.f)
    for j, c in enumerate(digit.coeffs):
        coeffs[r * spec.f + j] = c
    return PAdicElement(spec, a, coeffs, None)


def uniformizer(spec: ExtensionSpec) -> PAdicElement:
    return monomial(spec, spec.residue_field.one(), 1)


def from_rational(spec: ExtensionSpec, num: int, den: int = 1) -> PAdicElement:
    """num/den in K at full precision: cap = e·v + relative_cap."""
    if den == 0:
        raise DomainError("denominator must be nonzero")
    if num == 0:
        return zero(spec)
    p = spec.p
    a, b = vp_int(num, p), vp_int(den, p)
    v = a - b
    u_num, u_den = num // p ** a, den // p ** b
    cap = spec.e * v + spec.relative_cap
    modulus = p ** (spec.relative_cap // spec.e)
    unit = (u_num * pow(u_den, -1, modulus)) % modulus
    coeffs = [0] * (spec.e * spec.f)
    coeffs[0] = unit
    return PAdicElement(spec, v, coeffs, cap)


def sample_element(spec: ExtensionSpec, target_valuation, seed: int,
                   leading: Optional[ResidueElement] = None) -> PAdicElement:
    """Seeded pseudo-random element of exactly the given valuation."""
    index = Fraction(target_valuation) * spec.e
    if index.denominator != 1:
        raise DomainError(
            f"valuation {target_valuation} is not in (1/{spec.e})Z"
        )
    index = int(index)
    rng = np.random.default_rng(seed)
    field = spec.residue_field
    n_digits = spec.relative_cap
    if leading is None:
        lead_code = int(rng.integers(1, spec.q))
        leading = residue_from_code(spec, lead_code)
    elif leading.is_zero():
        raise DomainError("leading digit of a sampled element must be nonzero")
    tail = rng.integers(0, spec.p, size=(n_digits - 1, spec.f))
    word = (leading,) + tuple(field.element(row) for row in tail.tolist())
    return from_digits(DigitExpansion(spec, index, word))


def residue_from_code(spec: ExtensionSpec, code: int) -> ResidueElement:
    coeffs = []
    for _ in range(spec.f):
        code, c = divmod(code, spec.p)
        coeffs.append(c)
    return ResidueElement(tuple(coeffs))


# ======================================================================
# Operation-style wrappers
# ======================================================================

def arith(x: PAdicElement, y: PAdicElement, op: str) -> PAdicElement:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"Unsupported arithmetic operation: {op}")


def invert(x: PAdicElement) -> PAdicElement:
    return x.invert()


def valuation(x: PAdicElement) -> RationalExponent:
    return x.valuation()


def norm_exponent(x: PAdicElement) -> RationalExponent:
    return x.norm_exponent()
