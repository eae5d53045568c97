from typing import Optional

from src.schemas.dataset.models import ChoiceDataset
from src.schemas.design.models import Design
from src.schemas.estimate.models import DrawConfig, OptimizerOptions
from src.schemas.simgen.models import PopulationConfig, RecoveryReport
from src.schemas.spec.models import ParameterVector, UtilitySpec

from .choices import simulate_choices
from .population import generate_population
from .recovery import recovery_experiment


class ChoiceSimulator:
    """Synthetic panels and recovery experiments for one population configuration."""

    def __init__(self, population: PopulationConfig, draws: DrawConfig, options: OptimizerOptions):
        self.population = population
        self.draws = draws
        self.options = options

    def simulate(self, design: Design, spec: UtilitySpec, truth: ParameterVector, seed: Optional[int] = None) -> ChoiceDataset:
        """Population from the configured seed, choices from ``seed`` (defaults to the population seed + 1)."""
        skeleton = generate_population(self.population, design)
        return simulate_choices(skeleton, spec, truth, self.population.seed + 1 if seed is None else seed)

    def recover(self, spec: UtilitySpec, truth: ParameterVector, design: Design, n_replications: int) -> RecoveryReport:
        return recovery_experiment(spec, truth, self.population, design, self.draws, n_replications, options=self.options)
