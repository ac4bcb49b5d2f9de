"""Package Fold Planner."""

from .errors import InvalidViewCountError, MissingClipError, PlanError
from .plans import (
    BLOCK_KIND,
    NOVEL_KIND,
    FoldPlan,
    GlossSplit,
    check_plan,
    expected_counts,
    folds_per_block,
    load_plan,
    make_blocks,
    make_novel_signer_split,
    order_views,
    plan_from_dict,
    plan_to_dict,
    save_plans,
    signers_notation,
    views_notation,
)

__all__ = [
    "BLOCK_KIND",
    "NOVEL_KIND",
    "FoldPlan",
    "GlossSplit",
    "InvalidViewCountError",
    "MissingClipError",
    "PlanError",
    "check_plan",
    "expected_counts",
    "folds_per_block",
    "load_plan",
    "make_blocks",
    "make_novel_signer_split",
    "order_views",
    "plan_from_dict",
    "plan_to_dict",
    "save_plans",
    "signers_notation",
    "views_notation",
]
