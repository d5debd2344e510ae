"""Contour trees of regular scalar grids, with a simulated distributed pipeline."""

from .grid import (
    ScalarGrid,
    VertexOrder,
    load_raw,
    save_raw,
    sos_order,
    synthetic_gaussians,
    synthetic_ramp,
    synthetic_random,
)
from .sweep import MergeTree, compute_join_tree, compute_split_tree
from .tree import ContourTree, augment, combine, contour_tree
from .measure import (
    Branch,
    BranchDecomposition,
    VolumeAnnotation,
    branch_decomposition,
    hypersweep,
    select_top_branches,
    superarc_counts,
)

__all__ = [
    "Branch",
    "BranchDecomposition",
    "ContourTree",
    "MergeTree",
    "ScalarGrid",
    "VertexOrder",
    "VolumeAnnotation",
    "augment",
    "branch_decomposition",
    "combine",
    "compute_join_tree",
    "compute_split_tree",
    "contour_tree",
    "hypersweep",
    "load_raw",
    "save_raw",
    "select_top_branches",
    "sos_order",
    "superarc_counts",
    "synthetic_gaussians",
    "synthetic_ramp",
    "synthetic_random",
]
