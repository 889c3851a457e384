"""
Central Configuration for ultratree.
====================================
Desk-scale bounds, sampling defaults and export settings.  Every module
reads its defaults from the ``config`` singleton below and accepts an
explicit argument that overrides it.

Environment overrides (read once at import):
    ULTRATREE_OUTPUT_DIR   — where CSV / JSON artifacts are written
    ULTRATREE_SEED         — default seed for sampled corpora
    ULTRATREE_PRECISION    — default π-digit precision for the CLI
"""
import os
from dataclasses import dataclass, field
from typing import Tuple


@dataclass
class DeskBounds:
    """Size limits that keep exhaustive enumerations on a desk machine."""
    max_residue_order: int = 2 ** 20        # q = p^f
    max_census_words: int = 10 ** 6         # p^(2fm) words enumerated by a census
    max_tree_nodes: int = 10 ** 6           # nodes in a slice, refinement layers included
    max_partition_points: int = 2000        # pairwise predicate is quadratic


@dataclass
class SamplingConfig:
    """Seeded corpus generation."""
    default_seed: int = 7
    corpus_size: int = 500
    valuation_window: Tuple[int, int] = (-2, 2)   # stratified z0 valuations
    disk_sample_valuation_span: int = 3           # valuations above the disk boundary


@dataclass
class ExportConfig:
    format_tag: str = "ultratree/1"
    default_precision: int = 20


@dataclass
class Config:
    """Master configuration object."""
    bounds: DeskBounds = field(default_factory=DeskBounds)
    sampling: SamplingConfig = field(default_factory=SamplingConfig)
    export: ExportConfig = field(default_factory=ExportConfig)
    output_dir: str = "./output"

    def __post_init__(self):
        self.output_dir = os.getenv("ULTRATREE_OUTPUT_DIR", self.output_dir)
        seed = os.getenv("ULTRATREE_SEED")
        if seed is not None and seed.strip().lstrip("-").isdigit():
            self.sampling.default_seed = int(seed)
        precision = os.getenv("ULTRATREE_PRECISION")
        if precision is not None and precision.strip().isdigit() and int(precision) > 0:
            self.export.default_precision = int(precision)

    def ensure_output_dir(self) -> str:
        os.makedirs(self.output_dir, exist_ok=True)
        return self.output_dir


# Singleton config instance
config = Config()
