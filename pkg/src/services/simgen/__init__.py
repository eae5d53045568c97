from .choices import simulate_choices
from .factory import make_choice_simulator
from .population import generate_population, sample_bills
from .recovery import recovery_experiment, replication_seeds
from .simulator import ChoiceSimulator

__all__ = [
    "ChoiceSimulator",
    "generate_population",
    "make_choice_simulator",
    "recovery_experiment",
    "replication_seeds",
    "sample_bills",
    "simulate_choices",
]
