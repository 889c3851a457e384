#!/usr/bin/env python3
"""
Berkovich Line Test Suite
=========================
Exact Ext exponents, disk points and their classification, join / ρ,
the φ / φ⁻¹ coordinate change to W, and disk seminorms.

Run:   python test_berkovich.py
       python -m pytest test_berkovich.py -v
"""
import sys
import os
import math
import traceback
from fractions import Fraction

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from padic import constant, from_rational, make_extension, sample_element, zero
from padic.errors import DomainError, LiteralParseError
from berkovich import (
    NEG_INF,
    POS_INF,
    SQRT2,
    ZERO,
    BerkPoint,
    Ext,
    Polynomial,
    PointType,
    WPoint,
    classify,
    contains,
    ext_ops,
    format_ext,
    gauss_point,
    gauss_seminorm,
    join,
    nested_disk_point,
    parse_ext,
    phi,
    phi_inv,
    point_at_infinity,
    rho,
    same_disk,
    seminorm_sampled_sup,
    trunk_point,
    type3_from_path,
    w_equivalent,
)
from berkovich.points import parse_berk_literal, parse_w_literal, point_from_dict, point_to_dict

SPECS = [(2, 1, 1), (3, 1, 1), (2, 2, 1), (2, 1, 2)]


def _spec(p, e=1, f=1, precision=20):
    return make_extension(p, e, f, precision)


def _disk(spec, center, rexp):
    return BerkPoint(from_rational(spec, center), Ext.of(rexp))


def _random_ext(rng, e, irrational_share=0.3):
    a = Fraction(int(rng.integers(-4 * e, 4 * e + 1)), e)
    if rng.random() < irrational_share:
        return Ext(a, Fraction(int(rng.integers(-3, 4)) or 1, int(rng.integers(1, 4))))
    return Ext(a)


def _random_disk(spec, rng, irrational_share=0.3):
    v = Fraction(int(rng.integers(-2 * spec.e, 3 * spec.e + 1)), spec.e)
    center = sample_element(spec, v, int(rng.integers(0, 2 ** 31)))
    return BerkPoint(center, _random_ext(rng, spec.e, irrational_share))


# =====================================================================
#  Test harness
# =====================================================================

PASS = 0
FAIL = 0
SKIP = 0


def _run(label, fn):
    """Execute a test function; track pass/fail/skip."""
    global PASS, FAIL, SKIP
    try:
        result = fn()
        if result == 'SKIP':
            SKIP += 1
            print(f"  ⏭️  {label} — skipped")
        else:
            PASS += 1
            print(f"  ✅  {label}")
    except Exception as e:
        FAIL += 1
        print(f"  ❌  {label}  →  {e}")
        traceback.print_exc(limit=4)
        print()


# ─────────────────────────────────────────────────────────────────────
#  1. Ext
# ─────────────────────────────────────────────────────────────────────
def test_ext_examples():
    assert ext_ops(SQRT2, Ext(Fraction(7, 5)), "cmp") == 1
    assert ext_ops(SQRT2, Ext(Fraction(3, 2)), "cmp") == -1
    x = Ext(Fraction(1, 3), 2)
    assert ext_ops(x, ZERO, "add") == x
    assert ext_ops(NEG_INF, Ext(5), "max") == Ext(5)
    assert NEG_INF < Ext(-10 ** 9) < SQRT2 < POS_INF
    assert Ext(1, -1) < 0 < Ext(-1, 1)
    assert Ext(0, 1).ceil() == 2 and Ext(0, -1).ceil() == -1 and Ext(1, -1).ceil() == 0
    with pytest.raises(DomainError):
        POS_INF + NEG_INF
    with pytest.raises(DomainError):
        SQRT2.as_fraction()
    return True


def test_ext_sign_against_floats():
    rng = np.random.default_rng(3)
    for _ in range(5000):
        a = Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20)))
        b = Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20)))
        approx = float(a) + float(b) * math.sqrt(2)
        if abs(approx) > 1e-9:
            assert Ext(a, b).sign() == (1 if approx > 0 else -1), (a, b)
    return True


def test_ext_literals():
    for text in ("3/2", "sqrt2", "-sqrt2", "-1/3*sqrt2", "1/2 + 3*sqrt2", "1 - sqrt2", "+inf", "-inf"):
        assert format_ext(parse_ext(text)) == text, text
    assert parse_ext("2 + sqrt2 - 1") == Ext(1, 1)
    for bad in ("", "sqrt3", "1/2*", "x*sqrt2", "1//2"):
        with pytest.raises(LiteralParseError):
            parse_ext(bad)
    return True


# ─────────────────────────────────────────────────────────────────────
#  2. Points, containment, join, ρ
# ─────────────────────────────────────────────────────────────────────
def test_classify_examples():
    q3 = _spec(3)
    assert classify(gauss_point(q3)) is PointType.TYPE_II
    assert classify(BerkPoint(constant(q3, 4))) is PointType.TYPE_I
    assert classify(_disk(q3, 1, SQRT2)) is PointType.TYPE_III
    assert classify(point_at_infinity()) is PointType.TYPE_I
    with pytest.raises(DomainError):
        BerkPoint(None, ZERO)
    with pytest.raises(DomainError):
        BerkPoint(constant(q3, 1), POS_INF)
    return True


def test_contains_and_join_examples():
    q3 = _spec(3)
    assert contains(gauss_point(q3), gauss_point(q3))
    assert contains(_disk(q3, 0, 0), _disk(q3, 1, -2))
    assert not contains(_disk(q3, 0, -2), _disk(q3, 1, -2))
    j = join(_disk(q3, 0, -2), _disk(q3, 1, -1))
    assert j.radius_exp == 0 and same_disk(j, gauss_point(q3))
    a = _disk(q3, 7, NEG_INF)
    b = _disk(q3, 7, Fraction(-1, 1))
    assert same_disk(join(a, b), b)
    x = _disk(q3, 2, -1)
    assert same_disk(join(x, x), x)
    with pytest.raises(DomainError):
        contains(point_at_infinity(), x)
    return True


def test_rho_examples():
    q3 = _spec(3)
    assert rho(gauss_point(q3), _disk(q3, 0, -3)) == 3
    x = _disk(q3, 5, Fraction(-2))
    assert rho(x, x) == 0
    assert rho(trunk_point(q3, 1), trunk_point(q3, 2)) == 1
    assert rho(_disk(q3, 0, -1), _disk(q3, 1, -1)) == 2
    with pytest.raises(DomainError):
        rho(BerkPoint(constant(q3, 1)), gauss_point(q3))
    return True


def test_trunk_isometry():
    for p, e, f in SPECS:
        spec = _spec(p, e, f)
        omegas = [Ext(Fraction(k, e)) for k in range(-3 * e, 3 * e + 1)] + [SQRT2, -SQRT2, Ext(1, 1)]
        for w1 in omegas:
            for w2 in omegas:
                d = rho(trunk_point(spec, w1), trunk_point(spec, w2))
                assert d == (w1 - w2 if w1 >= w2 else w2 - w1)
    return True


def test_type3_construction():
    q3 = _spec(3)
    one = constant(q3, 1)
    pt = type3_from_path(0, SQRT2, one)
    assert classify(pt) is PointType.TYPE_III
    assert pt.radius_exp == -SQRT2 and pt.center == one
    assert rho(trunk_point(q3, 0), pt) == SQRT2
    deeper = type3_from_path(1, SQRT2, one)
    assert deeper.radius_exp == Ext(-1, -1)
    assert rho(trunk_point(q3, 1), deeper) == SQRT2
    with pytest.raises(DomainError):
        type3_from_path(0, Ext(2), one)
    with pytest.raises(DomainError):
        type3_from_path(0, SQRT2, constant(q3, 3))
    return True


def test_nested_disk_point():
    q3 = _spec(3)
    chain = [trunk_point(q3, w) for w in (0, 1, 2)]
    assert nested_disk_point(chain) is chain[-1]
    with pytest.raises(DomainError):
        nested_disk_point([trunk_point(q3, 2), trunk_point(q3, 0)])
    with pytest.raises(DomainError):
        nested_disk_point([])
    return True


def test_metric_suite():
    """Symmetry, nonnegativity, zero exactly on equal disks, and the
    triangle inequality on 10^4 triples."""
    for p, e, f in [(2, 1, 1), (2, 2, 1)]:
        spec = _spec(p, e, f, precision=8)
        rng = np.random.default_rng(17)
        pool = [_random_disk(spec, rng) for _ in range(60)]
        # recentred copies: same disk, different center
        for x in pool[:20]:
            v = (-x.radius_exp).ceil()
            offset = sample_element(spec, v, int(rng.integers(0, 2 ** 31)))
            pool.append(BerkPoint(x.center + offset, x.radius_exp))
        dist = {}
        for i in range(len(pool)):
            for j in range(len(pool)):
                dist[i, j] = rho(pool[i], pool[j])
        for i in range(len(pool)):
            assert dist[i, i] == 0
        for k in range(20):
            assert dist[k, 60 + k] == 0 and same_disk(pool[k], pool[60 + k])
        for i in range(len(pool)):
            for j in range(len(pool)):
                assert (dist[i, j] == 0) == same_disk(pool[i], pool[j]), (i, j)
        for i, j, k in rng.integers(0, len(pool), size=(10_000, 3)).tolist():
            assert dist[i, j] == dist[j, i]
            assert dist[i, j] >= 0
            assert dist[i, k] <= dist[i, j] + dist[j, k], (i, j, k)
    return True


def test_order_property():
    """contains(x, y) ⟺ join(x, y) is x, on seeded nested-ish pairs."""
    hits = 0
    for p, e, f in SPECS:
        spec = _spec(p, e, f, precision=8)
        rng = np.random.default_rng(5)
        for _ in range(1000):
            x = _random_disk(spec, rng)
            offset_v = Fraction(int(rng.integers(-1 * e, 4 * e + 1)), e)
            offset = sample_element(spec, offset_v, int(rng.integers(0, 2 ** 31)))
            shrink = Ext(Fraction(int(rng.integers(-2, 5)), e))
            y = BerkPoint(x.center + offset, x.radius_exp - shrink)
            c = contains(x, y)
            assert c == same_disk(join(x, y), x)
            assert c == same_disk(join(y, x), x)
            hits += c
    print(f"        {hits} contained pairs among {len(SPECS) * 1000}")
    return True


# ─────────────────────────────────────────────────────────────────────
#  3. φ / φ⁻¹
# ─────────────────────────────────────────────────────────────────────
def test_phi_examples():
    q3 = _spec(3)
    w = phi(gauss_point(q3))
    assert w.omega == 0 and w.center == zero(q3)
    assert phi(BerkPoint(zero(q3))).omega == POS_INF
    inf = phi(point_at_infinity())
    assert inf.omega == NEG_INF and inf.center is None
    assert phi_inv(inf).is_infinity
    w3 = phi(_disk(q3, 1, SQRT2))
    assert w3.omega == -SQRT2 and w3.center == constant(q3, 1)
    assert same_disk(phi_inv(WPoint(ZERO, zero(q3))), gauss_point(q3))
    t3 = phi_inv(WPoint(SQRT2, constant(q3, 1)))
    assert classify(t3) is PointType.TYPE_III and t3.radius_exp == -SQRT2
    return True


def test_phi_canonical_center():
    q3 = _spec(3)
    w = phi(_disk(q3, 5, -1), canonical=True)
    assert w.omega == 1 and w.center == constant(q3, 2)
    w = phi(BerkPoint(constant(q3, 5), -SQRT2), canonical=True)
    assert w.center == constant(q3, 5)
    assert w_equivalent(w, phi(BerkPoint(constant(q3, 5 + 9), -SQRT2)))
    assert not w_equivalent(w, phi(BerkPoint(constant(q3, 5 + 3), -SQRT2)))
    return True


def test_phi_round_trips():
    for p, e, f in SPECS:
        spec = _spec(p, e, f, precision=8)
        rng = np.random.default_rng(23)
        for _ in range(1000):
            omega = _random_ext(rng, e)
            v = Fraction(int(rng.integers(-2 * e, 3 * e + 1)), e)
            w = WPoint(omega, sample_element(spec, v, int(rng.integers(0, 2 ** 31))))
            back = phi(phi_inv(w))
            assert w_equivalent(back, w)
            assert w_equivalent(phi(phi_inv(w), canonical=True), w)
            x = phi_inv(w)
            assert same_disk(phi_inv(phi(x, canonical=True)), x)
    return True


# ─────────────────────────────────────────────────────────────────────
#  4. Serialization
# ─────────────────────────────────────────────────────────────────────
def test_point_literals():
    q3 = _spec(3)
    x = parse_berk_literal(q3, "center=3^0 * [1, 2],rexp=1/2")
    assert x.center == constant(q3, 7) and x.radius_exp == Fraction(1, 2)
    assert parse_berk_literal(q3, "inf").is_infinity
    assert parse_berk_literal(q3, "center=5").radius_exp == NEG_INF
    w = parse_w_literal(q3, "omega=sqrt2,center=1")
    assert w.omega == SQRT2 and w.center == constant(q3, 1)
    assert parse_w_literal(q3, "omega=-inf").center is None
    with pytest.raises(LiteralParseError):
        parse_berk_literal(q3, "rexp=1")
    with pytest.raises(LiteralParseError):
        parse_w_literal(q3, "omega=1")

    doc = point_to_dict(_disk(q3, 1, SQRT2))
    assert doc["center"].startswith("3^0 * [1, 0") and doc["radius_exp"] == "sqrt2"
    assert doc["type"] == "III"
    assert same_disk(point_from_dict(q3, doc), _disk(q3, 1, SQRT2))
    assert point_from_dict(q3, point_to_dict(point_at_infinity())).is_infinity
    return True


# ─────────────────────────────────────────────────────────────────────
#  5. Seminorms
# ─────────────────────────────────────────────────────────────────────
def test_gauss_seminorm_examples():
    for p in (2, 3):
        spec = _spec(p)
        t = Polynomial.from_rationals(spec, [0, 1])
        assert gauss_seminorm(t, gauss_point(spec)) == 0
        f = Polynomial.from_rationals(spec, [0, 1, p])
        assert gauss_seminorm(f, _disk(spec, 0, 1)) == 1
        c = Polynomial.from_rationals(spec, [Fraction(p * p, 5)])
        for disk in (gauss_point(spec), _disk(spec, 1, 3), _disk(spec, 0, SQRT2)):
            assert gauss_seminorm(c, disk) == -2
    q3 = _spec(3)
    assert gauss_seminorm(Polynomial(q3, ()), gauss_point(q3)) == NEG_INF
    with pytest.raises(DomainError):
        gauss_seminorm(t, point_at_infinity())
    return True


def test_taylor_shift():
    q3 = _spec(3)
    f = Polynomial.from_rationals(q3, [0, 0, 1])
    shifted = f.taylor_shift(constant(q3, 1))
    assert list(shifted.coeffs) == [constant(q3, 1), constant(q3, 2), constant(q3, 1)]
    rng = np.random.default_rng(2)
    for _ in range(20):
        g = Polynomial.from_rationals(q3, rng.integers(-9, 10, size=4).tolist())
        a = sample_element(q3, 0, int(rng.integers(0, 1000)))
        z = sample_element(q3, 1, int(rng.integers(0, 1000)))
        h = g.taylor_shift(a)
        assert h.evaluate(z - a) == g.evaluate(z)
    return True


def _random_poly(spec, rng):
    degree = int(rng.integers(0, 4))
    coeffs = []
    for _ in range(degree + 1):
        v = Fraction(int(rng.integers(-spec.e, 2 * spec.e + 1)), spec.e)
        coeffs.append(sample_element(spec, v, int(rng.integers(0, 2 ** 31))))
    return Polynomial(spec, tuple(coeffs))


def test_seminorm_multiplicativity():
    for p, e, f in SPECS:
        spec = _spec(p, e, f)
        rng = np.random.default_rng(31)
        for _ in range(200):
            g, h = _random_poly(spec, rng), _random_poly(spec, rng)
            center = sample_element(spec, Fraction(int(rng.integers(0, 2 * e + 1)), e),
                                    int(rng.integers(0, 2 ** 31)))
            disk = BerkPoint(center, _random_ext(rng, e, irrational_share=0.25))
            assert gauss_seminorm(g * h, disk) == gauss_seminorm(g, disk) + gauss_seminorm(h, disk)
    return True


def test_sampled_sup_bounds():
    for p, e, f in SPECS:
        spec = _spec(p, e, f)
        rng = np.random.default_rng(41)
        for k in range(40):
            g = _random_poly(spec, rng)
            disk = BerkPoint(sample_element(spec, 0, k), Ext(Fraction(int(rng.integers(-2 * e, 2 * e + 1)), e)))
            assert seminorm_sampled_sup(g, disk, 12, seed=k) <= gauss_seminorm(g, disk)
            one = seminorm_sampled_sup(g, disk, 1, seed=k)
            assert one == Ext.of(g.evaluate(disk.center).norm_exponent())
    return True


def test_sampled_sup_witness():
    q3 = _spec(3)
    f = Polynomial.from_rationals(q3, [0, 1, 3])
    disk = _disk(q3, 0, 1)
    assert seminorm_sampled_sup(f, disk, 8, seed=0) == gauss_seminorm(f, disk) == 1
    assert seminorm_sampled_sup(Polynomial(q3, ()), disk, 4, seed=0) == NEG_INF
    with pytest.raises(DomainError):
        seminorm_sampled_sup(f, _disk(q3, 0, SQRT2), 4, seed=0)
    with pytest.raises(DomainError):
        seminorm_sampled_sup(f, disk, 0, seed=0)
    return True


# =====================================================================
#  Runner
# =====================================================================

def main():
    print("\n" + "=" * 65)
    print("  Berkovich Line Test Suite")
    print("=" * 65)

    tests = [
        ("Ext examples", test_ext_examples),
        ("Ext sign vs floats", test_ext_sign_against_floats),
        ("Ext literals", test_ext_literals),
        ("Classification", test_classify_examples),
        ("Containment & join", test_contains_and_join_examples),
        ("ρ examples", test_rho_examples),
        ("Trunk isometry", test_trunk_isometry),
        ("Type III construction", test_type3_construction),
        ("Nested disk chains", test_nested_disk_point),
        ("Metric suite (10^4 triples)", test_metric_suite),
        ("Containment ⟺ join identity", test_order_property),
        ("φ examples", test_phi_examples),
        ("φ canonical centers", test_phi_canonical_center),
        ("φ / φ⁻¹ round trips", test_phi_round_trips),
        ("Point literals", test_point_literals),
        ("Gauss seminorm examples", test_gauss_seminorm_examples),
        ("Taylor shift", test_taylor_shift),
        ("Seminorm multiplicativity", test_seminorm_multiplicativity),
        ("Sampled sup ≤ Gauss", test_sampled_sup_bounds),
        ("Sampled sup witness", test_sampled_sup_witness),
    ]

    for label, fn in tests:
        _run(label, fn)

    print("\n" + "─" * 65)
    total = PASS + FAIL + SKIP
    print(f"  Results:  {PASS} passed  |  {FAIL} failed  |  {SKIP} skipped  "
          f"({total} total)")
    print("─" * 65 + "\n")

    if FAIL > 0:
        sys.exit(1)


if __name__ == "__main__":
    main()
