"""Skeletal semisimple ribbon categories, fusion-tree bases and axiom checks."""

from __future__ import annotations

from .axioms import AxiomReport, CheckResult, check_axioms, snake_scalars, twist_trace
from .builtins import TLCategory, builtin, fibonacci, tl, tl_f_symbol, z2, z3
from .core import (
    FMatrix,
    I,
    Category,
    CategoryError,
    Obj,
    TableCategory,
    TierError,
    WindowExhausted,
    as_obj,
    obj_summands,
)
from .io import DocumentError, category_to_document, load_category, object_name, parse_object
from .trees import (
    FusionTree,
    FusionTreeVector,
    f_move,
    f_move_inverse,
    fusion_tree_basis,
    hom_dim,
    hom_dim_brute,
    r_move,
)

__all__ = [
    "AxiomReport", "CheckResult", "check_axioms", "snake_scalars", "twist_trace",
    "TLCategory", "builtin", "fibonacci", "tl", "tl_f_symbol", "z2", "z3",
    "FMatrix", "I", "Category", "CategoryError", "Obj", "TableCategory", "TierError",
    "WindowExhausted", "as_obj", "obj_summands",
    "DocumentError", "category_to_document", "load_category", "object_name", "parse_object",
    "FusionTree", "FusionTreeVector", "f_move", "f_move_inverse", "fusion_tree_basis",
    "hom_dim", "hom_dim_brute", "r_move",
]
