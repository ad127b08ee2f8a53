"""Exact 3-coloring with a recursion budget and checkable answers."""
from .certificates import (
    ColoringCertificate,
    SolverOutcome,
    UncolorabilityCertificate,
    Verdict,
    verify_coloring,
    verify_uncolorability,
)
from .graph import Graph, PreconditionError
from .solver import (
    ObservedAlpha,
    SolveConfig,
    SolveStats,
    bfs_3col,
    general_3col,
    general_3col_planar,
    is_3_colorable,
    is_3_colorable_planar,
    solve,
)

__all__ = [
    "ColoringCertificate", "Graph", "ObservedAlpha", "PreconditionError", "SolveConfig",
    "SolveStats", "SolverOutcome", "UncolorabilityCertificate", "Verdict", "bfs_3col",
    "general_3col", "general_3col_planar", "is_3_colorable", "is_3_colorable_planar",
    "solve", "verify_coloring", "verify_uncolorability",
]
__version__ = "0.1.0"
