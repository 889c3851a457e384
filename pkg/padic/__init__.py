"""
p-adic core
===========
Exact finite-precision arithmetic in Q_p and its finite extensions K
(ramification index e, residual degree f).

Modules:
    residue_field – F_q digit arithmetic, deterministic irreducible choice
    extension     – ExtensionSpec / make_extension (unramified then π^e = p)
    element       – PAdicElement, digit expansions, constructors
    exponent      – rational exponents with ±∞ sentinels
    literals      – ``p^<q> * [d_0, ...]`` formatter / parser
"""

from padic.element import (  # noqa: F401
    DigitExpansion,
    PAdicElement,
    arith,
    constant,
    digits,
    from_digits,
    from_rational,
    invert,
    monomial,
    norm_exponent,
    sample_element,
    uniformizer,
    valuation,
    zero,
)
from padic.extension import ExtensionSpec, make_extension  # noqa: F401
from padic.residue_field import ResidueElement, ResidueField, residue_field_ops  # noqa: F401
