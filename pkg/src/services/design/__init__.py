from .builder import build_balanced_design
from .evaluation import d_error, information_matrix, level_balance_report
from .evaluator import DesignEvaluator
from .factory import make_design_evaluator
from .io import read_design, write_design
from .search import improve_design, improve_design_multistart

__all__ = [
    "DesignEvaluator",
    "build_balanced_design",
    "d_error",
    "improve_design",
    "improve_design_multistart",
    "information_matrix",
    "level_balance_report",
    "make_design_evaluator",
    "read_design",
    "write_design",
]
