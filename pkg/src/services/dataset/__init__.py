from .factory import make_choice_data_loader
from .loader import ChoiceDataLoader, export_dataset, load_dataset, write_exclusions
from .panel import (
    LEXICOGRAPHIC_RULES,
    derive_children_flag,
    expected_total_deprivation,
    filter_lexicographic,
    purchase_share_by_children,
    split_by_income,
)

__all__ = [
    "ChoiceDataLoader",
    "LEXICOGRAPHIC_RULES",
    "derive_children_flag",
    "expected_total_deprivation",
    "export_dataset",
    "filter_lexicographic",
    "load_dataset",
    "make_choice_data_loader",
    "purchase_share_by_children",
    "split_by_income",
    "write_exclusions",
]
