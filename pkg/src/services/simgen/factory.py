from src.config import get_settings

from .simulator import ChoiceSimulator


def make_choice_simulator() -> ChoiceSimulator:
    """Create a simulator from the configured population, draws and optimizer options."""
    settings = get_settings()
    return ChoiceSimulator(population=settings.population, draws=settings.draws, options=settings.optimizer)
