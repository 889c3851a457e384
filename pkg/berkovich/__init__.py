"""
Berkovich line model over the session field.

    ext       – exact radius exponents in Q + Q·√2 with ±∞
    points    – disks / type I-II-III points, join, ρ, φ and φ⁻¹
    seminorm  – polynomial disk seminorms and a sampled-sup oracle
"""

from berkovich.ext import NEG_INF, POS_INF, SQRT2, ZERO, Ext, ext_ops, format_ext, parse_ext  # noqa: F401
from berkovich.points import (  # noqa: F401
    BerkPoint,
    PointType,
    WPoint,
    classify,
    contains,
    gauss_point,
    join,
    nested_disk_point,
    phi,
    phi_inv,
    point_at_infinity,
    rho,
    same_disk,
    trunk_point,
    type3_from_path,
    w_equivalent,
)
from berkovich.seminorm import Polynomial, gauss_seminorm, seminorm_sampled_sup  # noqa: F401
