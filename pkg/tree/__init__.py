"""
Coarse-grained product space and its tree.

    chordal  – u-exponent, ∼ / ∼_m, canonical class representatives
    bt_tree  – extended Bruhat–Tits tree nodes, refinement, slices
    export   – DOT / JSON (ultratree/1) serialization
"""

from tree.bt_tree import (  # noqa: F401
    RefinedNode,
    TreeNode,
    TreeSlice,
    ancestors,
    build_enhanced_tree,
    build_tree,
    children,
    graph_distance,
    hca,
    is_ancestor,
    node_of_point,
    parent,
    refinement_census,
    refinement_children,
    split_factor,
    trunk_node,
)
from tree.chordal import (  # noqa: F401
    ClassRep,
    ProductPoint,
    canonical_class,
    chordal_u_exponent,
    equivalent,
    equivalent_m,
    sup_norm_exponent,
)
