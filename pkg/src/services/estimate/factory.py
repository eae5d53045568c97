from src.config import get_settings

from .estimator import ChoiceModelEstimator


def make_estimator() -> ChoiceModelEstimator:
    """Create an estimator from the configured draws and optimizer options.

    :returns: An instance of the choice model estimator
    """
    settings = get_settings()
    return ChoiceModelEstimator(draws=settings.draws, options=settings.optimizer)
