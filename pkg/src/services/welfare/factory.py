from src.config import get_settings

from .calculator import DeprivationCostCalculator


def make_deprivation_cost_calculator() -> DeprivationCostCalculator:
    """Create a calculator from the configured curve settings and draws."""
    settings = get_settings()
    return DeprivationCostCalculator(config=settings.dcf, draws=settings.draws)
