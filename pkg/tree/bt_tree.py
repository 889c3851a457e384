"""
Extended Bruhat–Tits Tree
=========================
A node is (ω, word): trunk depth ω ∈ (1/e)Z and a digit word with
indices strictly below h = e·ω.  The empty word is the trunk node
(z0 = p^ω, z = 0); a nonempty word always ends at index h − 1.

    parent     (ω − 1/e, word truncated below h − 1)
    children   branch: word extended by every digit of F_q
               trunk:  trunk node at ω + 1/e, plus q − 1 branches
                       starting with a nonzero digit at index h

so every interior node has degree q + 1 = p^f + 1.

Refinement: each node B(z0, z) splits into q² − q classes B_1 (unit
z0 digit, free z digit), and each B_m (m ≥ 1) into q² classes B_(m+1).
Level-m census: q^(2m) · (1 − 1/q).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from config import config
from padic.element import DigitExpansion, PAdicElement
from padic.errors import DeskBoundError, DomainError, SpecMismatchError
from padic.extension import ExtensionSpec
from padic.residue_field import ResidueElement
from tree.chordal import word_below


# ======================================================================
# Node types
# ======================================================================

@dataclass(frozen=True)
class TreeNode:
    omega: Fraction
    word: DigitExpansion

    def __post_init__(self):
        h = self.omega * self.spec.e
        if h.denominator != 1:
            raise DomainError(f"omega {self.omega} is not in (1/{self.spec.e})Z")
        if self.word.digits:
            if self.word.hi != h:
                raise DomainError(
                    f"branch word must end at index {h - 1}, got hi={self.word.hi}"
                )
            if self.word.digits[0].is_zero():
                raise DomainError("leading digit of a branch word must be nonzero")
        elif self.word.lo != h:
            raise DomainError(f"trunk node at omega={self.omega} must carry lo={h}")

    @property
    def spec(self) -> ExtensionSpec:
        return self.word.spec

    @property
    def h(self) -> int:
        """Trunk depth as a π-index (e·ω)."""
        return int(self.omega * self.spec.e)

    @property
    def is_trunk(self) -> bool:
        return not self.word.digits

    def sort_key(self) -> tuple:
        return (self.omega, len(self.word), tuple(d.coeffs for d in self.word.digits))

    def label(self) -> str:
        return f"w={self.omega};word={self.word}"


@dataclass(frozen=True)
class RefinedNode:
    """A level-m class B_m inside the base class ``base``."""
    base: TreeNode
    m: int
    z0_word: Tuple[ResidueElement, ...]
    z_word: Tuple[ResidueElement, ...]

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"refined nodes start at level 1, got {self.m}")
        if len(self.z0_word) != self.m or len(self.z_word) != self.m:
            raise DomainError("refinement words must carry exactly m digits")
        if self.z0_word[0].is_zero():
            raise DomainError("z0 refinement word must start with a unit digit")

    @property
    def spec(self) -> ExtensionSpec:
        return self.base.spec

    def parent(self) -> Union[TreeNode, "RefinedNode"]:
        if self.m == 1:
            return self.base
        return RefinedNode(self.base, self.m - 1, self.z0_word[:-1], self.z_word[:-1])

    def sort_key(self) -> tuple:
        return (
            self.base.sort_key(),
            self.m,
            tuple(d.coeffs for d in self.z0_word),
            tuple(d.coeffs for d in self.z_word),
        )

    def label(self) -> str:
        z0 = ",".join(str(d) for d in self.z0_word)
        z = ",".join(str(d) for d in self.z_word)
        return f"{self.base.label()};m={self.m};z0=[{z0}];z=[{z}]"


AnyNode = Union[TreeNode, RefinedNode]


# ======================================================================
# Constructors & navigation
# ======================================================================

def trunk_node(spec: ExtensionSpec, omega) -> TreeNode:
    omega = Fraction(omega)
    return TreeNode(omega, DigitExpansion(spec, _index(spec, omega), ()))


def _index(spec: ExtensionSpec, omega) -> int:
    h = Fraction(omega) * spec.e
    if h.denominator != 1:
        raise DomainError(f"omega {omega} is not in (1/{spec.e})Z")
    return int(h)


def _node_at(spec: ExtensionSpec, h: int, word: DigitExpansion) -> TreeNode:
    return TreeNode(Fraction(h, spec.e), word)


def children(n: TreeNode) -> List[TreeNode]:
    spec = n.spec
    field_ = spec.residue_field
    if n.is_trunk:
        out = [trunk_node(spec, n.omega + spec.value_group_step)]
        out.extend(
            _node_at(spec, n.h + 1, DigitExpansion(spec, n.h, (d,)))
            for d in field_.nonzero_elements()
        )
        return out
    return [_node_at(spec, n.h + 1, n.word.extended(d)) for d in field_.elements()]


def parent(n: TreeNode) -> TreeNode:
    return _node_at(n.spec, n.h - 1, n.word.truncated(n.h - 1))


def ancestors(n: TreeNode, omega_floor) -> List[TreeNode]:
    """n, parent(n), ... down to trunk depth ``omega_floor`` inclusive."""
    floor_h = _index(n.spec, omega_floor)
    chain = [n]
    while chain[-1].h > floor_h:
        chain.append(parent(chain[-1]))
    return chain


def is_ancestor(a: TreeNode, b: TreeNode) -> bool:
    """True iff a lies on the path from b down the tree (a = b included)."""
    if not a.spec.same_field(b.spec):
        raise SpecMismatchError("nodes come from different extensions")
    return a.h <= b.h and b.word.truncated(a.h) == a.word


def node_of_point(z: PAdicElement, omega) -> TreeNode:
    spec = z.spec
    h = _index(spec, omega)
    return _node_at(spec, h, word_below(z, h))


def hca(a: TreeNode, b: TreeNode) -> TreeNode:
    if not a.spec.same_field(b.spec):
        raise SpecMismatchError("nodes come from different extensions")
    h = min(a.h, b.h)
    while True:
        wa, wb = a.word.truncated(h), b.word.truncated(h)
        if wa == wb:
            return _node_at(a.spec, h, wa)
        h -= 1


def graph_distance(a: TreeNode, b: TreeNode) -> int:
    c = hca(a, b)
    return (a.h - c.h) + (b.h - c.h)


# ======================================================================
# Refinement
# ======================================================================

def refinement_children(n: AnyNode, to_level: int) -> List[RefinedNode]:
    level = n.m if isinstance(n, RefinedNode) else 0
    if to_level != level + 1:
        raise DomainError(
            f"refinement must go one level at a time: {level} -> {to_level}"
        )
    field_ = n.spec.residue_field
    if level == 0:
        return [
            RefinedNode(n, 1, (a,), (b,))
            for a in field_.nonzero_elements()
            for b in field_.elements()
        ]
    return [
        RefinedNode(n.base, to_level, n.z0_word + (a,), n.z_word + (b,))
        for a in field_.elements()
        for b in field_.elements()
    ]


def census_closed_form(spec: ExtensionSpec, m: int) -> int:
    if m < 1:
        raise DomainError(f"census level must be >= 1, got {m}")
    q = spec.q
    return q ** (2 * m - 1) * (q - 1)


def split_factor(spec: ExtensionSpec, m: int) -> int:
    """Number of level-(m+1) classes inside one level-m class."""
    if m < 0:
        raise DomainError(f"refinement level must be >= 0, got {m}")
    q = spec.q
    return q * q - q if m == 0 else q * q


def check_census_bound(spec: ExtensionSpec, m: int) -> None:
    words = spec.q ** (2 * m)
    if words > config.bounds.max_census_words:
        raise DeskBoundError(
            f"census at m={m} needs {words} word pairs "
            f"(limit {config.bounds.max_census_words})"
        )


def iter_refined(n: TreeNode, m: int) -> Iterator[RefinedNode]:
    """All level-m descendants of n, walking refinement_children."""
    frontier: Sequence[AnyNode] = [n]
    for level in range(1, m + 1):
        frontier = [c for x in frontier for c in refinement_children(x, level)]
    yield from frontier


def refinement_census(spec: ExtensionSpec, m: int) -> Tuple[int, int]:
    """(closed form, enumerated count) of level-m classes inside B(1, 0)."""
    closed = census_closed_form(spec, m)
    check_census_bound(spec, m)
    root = trunk_node(spec, 0)
    enumerated = sum(1 for _ in iter_refined(root, m))
    return closed, enumerated


def level_words(spec: ExtensionSpec, m: int) -> Iterator[Tuple[Tuple[ResidueElement, ...],
                                                                 Tuple[ResidueElement, ...]]]:
    """Every (z0_word, z_word) pair of a level-m class, by direct product."""
    check_census_bound(spec, m)
    field_ = spec.residue_field
    elems = list(field_.elements())
    units = list(field_.nonzero_elements())
    for lead in units:
        for z0_tail in itertools.product(elems, repeat=m - 1):
            for z_word in itertools.product(elems, repeat=m):
                yield (lead,) + z0_tail, z_word


# ======================================================================
# Slices
# ======================================================================

@dataclass(frozen=True)
class TreeSlice:
    spec: ExtensionSpec
    omega_min: Fraction
    omega_max: Fraction
    digit_depth: int
    nodes: Tuple[TreeNode, ...] = ()
    edges: Tuple[Tuple[int, int], ...] = ()
    m_max: int = 0
    refined: Tuple[RefinedNode, ...] = ()
    refinement_edges: Tuple[Tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.nodes) + len(self.refined)

    def node(self, i: int) -> AnyNode:
        if i < len(self.nodes):
            return self.nodes[i]
        return self.refined[i - len(self.nodes)]

    def index(self) -> Dict[AnyNode, int]:
        out: Dict[AnyNode, int] = {n: i for i, n in enumerate(self.nodes)}
        base = len(self.nodes)
        out.update({r: base + j for j, r in enumerate(self.refined)})
        return out

    def tree_degrees(self) -> List[int]:
        deg = [0] * len(self.nodes)
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def refinement_degrees(self) -> List[int]:
        deg = [0] * len(self)
        for a, b in self.refinement_edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def is_interior(self, i: int) -> bool:
        n = self.nodes[i]
        if n.omega >= self.omega_max:
            return False
        if n.is_trunk:
            return n.omega > self.omega_min and self.digit_depth >= 1
        return len(n.word) < self.digit_depth

    def interior_indices(self) -> List[int]:
        return [i for i in range(len(self.nodes)) if self.is_interior(i)]


def _branch_count(q: int, levels: int, depth: int) -> int:
    return sum((q - 1) * q ** (k - 1) for k in range(1, min(depth, levels) + 1))


def build_tree(spec: ExtensionSpec, omega_min, omega_max,
               digit_depth: Optional[int] = None) -> TreeSlice:
    """All nodes with ω in [omega_min, omega_max] and word length ≤ digit_depth.

    ``digit_depth=None`` means full depth (every branch grows to omega_max).
    """
    omega_min, omega_max = Fraction(omega_min), Fraction(omega_max)
    lo_h, hi_h = _index(spec, omega_min), _index(spec, omega_max)
    depth = max(hi_h - lo_h, 0) if digit_depth is None else digit_depth
    if depth < 0:
        raise DomainError(f"digit depth must be >= 0, got {digit_depth}")
    empty = TreeSlice(spec, omega_min, omega_max, depth)
    if lo_h > hi_h:
        return empty

    total = (hi_h - lo_h + 1) + sum(
        _branch_count(spec.q, hi_h - h, depth) for h in range(lo_h, hi_h)
    )
    if total > config.bounds.max_tree_nodes:
        raise DeskBoundError(
            f"tree slice would hold {total} nodes (limit {config.bounds.max_tree_nodes})"
        )

    nodes: List[TreeNode] = []
    for h in range(lo_h, hi_h + 1):
        trunk = trunk_node(spec, Fraction(h, spec.e))
        nodes.append(trunk)
        if h == hi_h or depth == 0:
            continue
        stack = [c for c in children(trunk) if not c.is_trunk]
        while stack:
            n = stack.pop()
            nodes.append(n)
            if n.h < hi_h and len(n.word) < depth:
                stack.extend(children(n))

    nodes.sort(key=TreeNode.sort_key)
    index = {n: i for i, n in enumerate(nodes)}
    edges = []
    for i, n in enumerate(nodes):
        j = index.get(parent(n))
        if j is not None:
            edges.append((min(i, j), max(i, j)))
    edges.sort()
    return replace(empty, nodes=tuple(nodes), edges=tuple(edges))


def build_enhanced_tree(spec: ExtensionSpec, base_slice: TreeSlice, m_max: int) -> TreeSlice:
    """Attach refinement layers 1..m_max under every base node."""
    if not spec.same_field(base_slice.spec):
        raise SpecMismatchError("base slice was built over a different extension")
    if m_max < 0:
        raise DomainError(f"m_max must be >= 0, got {m_max}")
    if m_max == 0:
        return base_slice

    per_node = sum(census_closed_form(spec, m) for m in range(1, m_max + 1))
    total = len(base_slice.nodes) * (1 + per_node)
    if total > config.bounds.max_tree_nodes:
        raise DeskBoundError(
            f"enhanced tree would hold {total} nodes (limit {config.bounds.max_tree_nodes})"
        )

    refined: List[RefinedNode] = []
    for n in base_slice.nodes:
        frontier: List[AnyNode] = [n]
        for level in range(1, m_max + 1):
            frontier = [c for x in frontier for c in refinement_children(x, level)]
            refined.extend(frontier)
    refined.sort(key=RefinedNode.sort_key)

    offset = len(base_slice.nodes)
    index: Dict[AnyNode, int] = {n: i for i, n in enumerate(base_slice.nodes)}
    index.update({r: offset + j for j, r in enumerate(refined)})
    edges = sorted((index[r.parent()], index[r]) for r in refined)
    return replace(
        base_slice,
        m_max=m_max,
        refined=tuple(refined),
        refinement_edges=tuple(edges),
    )
