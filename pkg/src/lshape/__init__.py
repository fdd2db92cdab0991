"""Planar one-bend (L-shaped) drawings of trees on point sets."""

from __future__ import annotations

from .binary import binary_points_needed, compute_budgets, embed_binary, embed_binary_ex
from .drawing import Drawing, render_svg, validate
from .embedding import InsufficientPoints, InternalBudgetViolation, embed_on_diagonal
from .geometry import Point, PointSet
from .oracle import CapExceeded, enumerate_orderings_and_test, exists_drawing
from .paths import (
    M,
    M_cat,
    caterpillar_points_needed,
    embed_monotone_path,
    embed_top_view_caterpillar,
)
from .ternary import compute_budgets_ternary, embed_ternary, embed_ternary_ex, ternary_points_needed
from .trees import OrderedTree, RootedTree, parse_tree

__version__ = "0.1.0"

__all__ = [
    "binary_points_needed", "compute_budgets", "embed_binary", "embed_binary_ex",
    "Drawing", "render_svg", "validate",
    "InsufficientPoints", "InternalBudgetViolation", "embed_on_diagonal",
    "Point", "PointSet",
    "CapExceeded", "enumerate_orderings_and_test", "exists_drawing",
    "M", "M_cat", "caterpillar_points_needed", "embed_monotone_path", "embed_top_view_caterpillar",
    "compute_budgets_ternary", "embed_ternary", "embed_ternary_ex", "ternary_points_needed",
    "OrderedTree", "RootedTree", "parse_tree",
]
