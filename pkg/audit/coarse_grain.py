"""
Coarse-Graining Audit
=====================
Brute-force cross-checks between the chordal relation and the tree:

  partition   union-find over the pairwise predicate  u ≤ |π|^(2m)
              against grouping by canonical_class(·, m); every
              transitivity failure R[i,j] ∧ R[j,k] ∧ ¬R[i,k] is listed
  census      closed form q^(2m)(1 − 1/q)  =  refinement enumeration
              =  distinct level-m classes among all digit-word
              representatives of B(1, 0)
  siblings    distinct level-(m+1) classes inside one level-m class
              sit at chordal exponent exactly −2m/e from each other
  nesting     ClassReps of (p^ω, z) along an increasing ω chain form
              a prefix chain

Audits never raise on a failed check; the report's ``passed`` flag
and witness lists carry the outcome.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config import config
from padic.element import PAdicElement, monomial, sample_element, zero
from padic.errors import DeskBoundError, DomainError, SpecMismatchError
from padic.exponent import NEG_INF, format_exponent, format_ratio
from padic.extension import ExtensionSpec
from padic.residue_field import ResidueElement
from audit.union_find import UnionFind
from tree.bt_tree import check_census_bound, level_words, node_of_point, refinement_census, split_factor
from tree.chordal import (
    ProductPoint,
    canonical_class,
    chordal_u_exponent,
    level_threshold,
)

MAX_WITNESSES = 20


# ======================================================================
# Reports
# ======================================================================

@dataclass
class PartitionReport:
    n_points: int
    level: int
    n_classes_bruteforce: int
    n_classes_canonical: int
    mismatches: List[Tuple[int, int]] = field(default_factory=list)
    transitivity_violations: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            not self.mismatches
            and not self.transitivity_violations
            and self.n_classes_bruteforce == self.n_classes_canonical
        )

    def to_dict(self) -> dict:
        return {
            "n_points": self.n_points,
            "level": self.level,
            "n_classes_bruteforce": self.n_classes_bruteforce,
            "n_classes_canonical": self.n_classes_canonical,
            "mismatches": [list(w) for w in self.mismatches],
            "transitivity_violations": [list(w) for w in self.transitivity_violations],
            "passed": self.passed,
        }


@dataclass
class SiblingReport:
    m: int
    n_children: int
    expected_exponent: Fraction
    observed: List[str] = field(default_factory=list)
    violations: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n_children": self.n_children,
            "expected_exponent": format_exponent(self.expected_exponent),
            "observed": self.observed,
            "violations": [list(w) for w in self.violations],
            "passed": self.passed,
        }


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def report_to_json(doc: dict) -> str:
    body = {"format": config.export.format_tag, **doc}
    return json.dumps(body, indent=2, default=_json_default) + "\n"


# ======================================================================
# Corpus
# ======================================================================

def stratified_corpus(spec: ExtensionSpec, n: int, seed: Optional[int] = None) -> List[ProductPoint]:
    """Anchors spread over z0 valuations in the configured window, each
    followed by perturbed copies whose differences straddle the class
    boundary index e·v(z0).
    """
    seed = config.sampling.default_seed if seed is None else seed
    rng = np.random.default_rng(seed)
    e = spec.e
    lo, hi = config.sampling.valuation_window
    z0_indices = np.arange(lo * e, hi * e + 1)

    def draw(index: int) -> PAdicElement:
        return sample_element(spec, Fraction(int(index), e), int(rng.integers(0, 2 ** 31)))

    points: List[ProductPoint] = []
    n_anchors = max(1, n // 5)
    anchors: List[Tuple[int, ProductPoint]] = []
    for _ in range(n_anchors):
        h = int(rng.choice(z0_indices))
        z_index = h + int(rng.integers(-2 * e, e + 1))
        z = zero(spec) if rng.random() < 0.15 else draw(z_index)
        anchors.append((h, ProductPoint(draw(h), z)))

    while len(points) < n:
        if len(points) < n_anchors:
            points.append(anchors[len(points)][1])
            continue
        h, anchor = anchors[int(rng.integers(0, n_anchors))]
        z0 = anchor.z0 + draw(h + int(rng.integers(1, 3 + 1)))
        z = anchor.z + draw(h + int(rng.integers(-2, 3 + 1)))
        points.append(ProductPoint(z0, z))
    return points


# ======================================================================
# Partition
# ======================================================================

def pairwise_exponents(points: Sequence[ProductPoint]) -> np.ndarray:
    """Symmetric object matrix of chordal exponents (diagonal −∞)."""
    n = len(points)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        out[i, i] = NEG_INF
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = chordal_u_exponent(points[i], points[j])
    return out


def _check_points(points: Sequence[ProductPoint]) -> None:
    if len(points) > config.bounds.max_partition_points:
        raise DeskBoundError(
            f"partition audit takes at most {config.bounds.max_partition_points} points, "
            f"got {len(points)}"
        )
    if points:
        spec = points[0].spec
        for pt in points[1:]:
            if not spec.same_field(pt.spec):
                raise SpecMismatchError("partition corpus mixes extensions")


def brute_force_partition(points: Sequence[ProductPoint], level: int,
                          exponents: Optional[np.ndarray] = None) -> PartitionReport:
    _check_points(points)
    n = len(points)
    if n == 0:
        return PartitionReport(0, level, 0, 0)
    threshold = level_threshold(points[0].spec.e, level)
    if exponents is None:
        exponents = pairwise_exponents(points)
    related = np.array(
        [[exponents[i, j] <= threshold for j in range(n)] for i in range(n)], dtype=bool
    )

    uf = UnionFind(n)
    for i, j in zip(*np.nonzero(np.triu(related, k=1))):
        uf.union(int(i), int(j))

    keys = [canonical_class(pt, level) for pt in points]
    canonical_ids: Dict[object, int] = {}
    labels = np.array([canonical_ids.setdefault(k, len(canonical_ids)) for k in keys])
    same_class = labels[:, None] == labels[None, :]

    mismatches = [
        (int(i), int(j))
        for i, j in zip(*np.nonzero(np.triu(related != same_class, k=1)))
    ][:MAX_WITNESSES]

    r = related.astype(np.float64)
    broken = ((r @ r) > 0) & ~related
    violations: List[Tuple[int, int, int]] = []
    for i, k in zip(*np.nonzero(broken)):
        j = int(np.nonzero(related[i] & related[:, k])[0][0])
        violations.append((int(i), j, int(k)))
        if len(violations) >= MAX_WITNESSES:
            break

    return PartitionReport(
        n_points=n,
        level=level,
        n_classes_bruteforce=len(uf.groups()),
        n_classes_canonical=len(canonical_ids),
        mismatches=mismatches,
        transitivity_violations=violations,
    )


def partition_audit(points: Sequence[ProductPoint], levels: Sequence[int]) -> List[PartitionReport]:
    """brute_force_partition at several levels over one exponent matrix."""
    _check_points(points)
    exponents = pairwise_exponents(points)
    return [brute_force_partition(points, m, exponents) for m in levels]


# ======================================================================
# Census
# ======================================================================

def _word_element(spec: ExtensionSpec, word: Sequence[ResidueElement]) -> PAdicElement:
    """Exact Σ lift(word[i])·π^i."""
    x = zero(spec)
    for i, d in enumerate(word):
        if not d.is_zero():
            x = x + monomial(spec, d, i)
    return x


def census_audit(spec: ExtensionSpec, m_range: Sequence[int]) -> pd.DataFrame:
    m_range = list(m_range)
    for m in m_range:
        check_census_bound(spec, m)
    rows = []
    for m in m_range:
        closed, enumerated = refinement_census(spec, m)
        reps = {
            canonical_class(ProductPoint(_word_element(spec, z0w), _word_element(spec, zw)), m)
            for z0w, zw in level_words(spec, m)
        }
        rows.append({
            "m": m,
            "closed_form": closed,
            "enumerated": enumerated,
            "canonical_classes": len(reps),
            "split_factor": split_factor(spec, m - 1),
        })
    df = pd.DataFrame(rows, columns=["m", "closed_form", "enumerated",
                                     "canonical_classes", "split_factor"])
    df["passed"] = (df["closed_form"] == df["enumerated"]) & \
                   (df["closed_form"] == df["canonical_classes"])
    return df


# ======================================================================
# Siblings & nesting
# ======================================================================

def sibling_distance_audit(spec: ExtensionSpec, m: int) -> SiblingReport:
    """Pairwise chordal exponents among the children of one level-m class
    inside B(1, 0): the class with z0 ≡ 1 and z ≡ 0 modulo π^m.
    """
    if m < 0:
        raise DomainError(f"refinement level must be >= 0, got {m}")
    field_ = spec.residue_field
    one, nil = field_.one(), field_.zero()
    prefix_z0 = (one,) + (nil,) * (m - 1) if m else ()
    prefix_z = (nil,) * m
    heads = field_.nonzero_elements() if m == 0 else field_.elements()
    children = [
        ProductPoint(_word_element(spec, prefix_z0 + (a,)), _word_element(spec, prefix_z + (b,)))
        for a in heads
        for b in field_.elements()
    ]
    if len(children) != split_factor(spec, m):
        raise RuntimeError("sibling enumeration disagrees with the split factor")

    expected = level_threshold(spec.e, m)
    report = SiblingReport(m=m, n_children=len(children), expected_exponent=expected)
    seen = set()
    for i in range(len(children)):
        for j in range(i + 1, len(children)):
            t = chordal_u_exponent(children[i], children[j])
            seen.add(format_exponent(t))
            if t != expected and len(report.violations) < MAX_WITNESSES:
                report.violations.append((i, j))
    report.observed = sorted(seen)
    return report


def nesting_audit(z: PAdicElement, omega_chain: Sequence) -> bool:
    spec = z.spec
    chain = [Fraction(w) for w in omega_chain]
    if any(b <= a for a, b in zip(chain, chain[1:])):
        raise DomainError(f"omega chain must be strictly increasing: {omega_chain}")
    reps = []
    for omega in chain:
        h = omega * spec.e
        if h.denominator != 1:
            raise DomainError(f"omega {omega} is not in (1/{spec.e})Z")
        z0 = monomial(spec, spec.residue_field.one(), int(h))
        reps.append((int(h), canonical_class(ProductPoint(z0, z))))
    return all(
        deeper.digit_word.truncated(h) == rep.digit_word
        for (h, rep), (_, deeper) in zip(reps, reps[1:])
    )


# ======================================================================
# Engine
# ======================================================================

@dataclass
class AuditResult:
    kind: str
    passed: bool
    table: pd.DataFrame
    payload: Dict[str, object]
    reports: List[PartitionReport] = field(default_factory=list)


class CoarseGrainAuditor:
    """Runs the named audits over one extension.

    The seed only feeds the partition corpus; the other audits are
    exhaustive and deterministic.
    """

    KINDS = ("census", "partition", "siblings", "nesting")

    def __init__(self, spec: ExtensionSpec, seed: Optional[int] = None):
        self.spec = spec
        self.seed = config.sampling.default_seed if seed is None else seed

    def run(self, kind: str, *, m: int = 2, n: Optional[int] = None,
            levels: Sequence[int] = (0, 1, 2), z: Optional[PAdicElement] = None,
            omegas: Sequence = ()) -> AuditResult:
        if kind == "census":
            return self.census(m)
        if kind == "siblings":
            return self.siblings(m)
        if kind == "partition":
            return self.partition(config.sampling.corpus_size if n is None else n, levels)
        if kind == "nesting":
            if z is None:
                raise DomainError("nesting audit needs a point z")
            return self.nesting(z, omegas)
        raise DomainError(f"unknown audit '{kind}' (expected one of {', '.join(self.KINDS)})")

    def census(self, m: int) -> AuditResult:
        df = census_audit(self.spec, range(1, m + 1))
        return AuditResult("census", bool(df["passed"].all()), df,
                           {"rows": df.to_dict(orient="records")})

    def siblings(self, m: int) -> AuditResult:
        reports = [sibling_distance_audit(self.spec, level) for level in range(0, m + 1)]
        docs = [r.to_dict() for r in reports]
        return AuditResult("siblings", all(r.passed for r in reports),
                           pd.DataFrame(docs), {"reports": docs})

    def partition(self, n: int, levels: Sequence[int]) -> AuditResult:
        corpus = stratified_corpus(self.spec, n, self.seed)
        reports = partition_audit(corpus, levels)
        docs = [r.to_dict() for r in reports]
        return AuditResult("partition", all(r.passed for r in reports), pd.DataFrame(docs),
                           {"seed": self.seed, "reports": docs}, reports)

    def nesting(self, z: PAdicElement, omegas: Sequence) -> AuditResult:
        chain = [Fraction(w) for w in omegas]
        passed = nesting_audit(z, chain)
        labels = [format_ratio(w) for w in chain]
        nodes = [node_of_point(z, w).label() for w in chain]
        return AuditResult("nesting", passed,
                           pd.DataFrame({"omega": labels, "node": nodes}),
                           {"omegas": labels, "nodes": nodes, "nested": passed})
