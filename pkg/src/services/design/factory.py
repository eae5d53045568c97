from src.config import get_settings

from .evaluator import DesignEvaluator


def make_design_evaluator() -> DesignEvaluator:
    """Create a design evaluator from the configured levels, priors and search settings."""
    settings = get_settings()
    return DesignEvaluator(settings=settings.design)
