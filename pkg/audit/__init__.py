"""
Brute-force verification harness for the coarse-grained space.

    union_find   – disjoint sets closing the pairwise relation
    coarse_grain – partition / census / sibling / nesting audits and the
                   CoarseGrainAuditor engine the CLI drives
"""

from audit.coarse_grain import (  # noqa: F401
    AuditResult,
    CoarseGrainAuditor,
    PartitionReport,
    SiblingReport,
    brute_force_partition,
    census_audit,
    nesting_audit,
    pairwise_exponents,
    partition_audit,
    report_to_json,
    sibling_distance_audit,
    stratified_corpus,
)
from audit.union_find import UnionFind  # noqa: F401
