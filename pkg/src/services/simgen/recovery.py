import logging
from typing import Dict, List, Optional

import numpy as np
from src.exceptions import EstimationException, SimulationException
from src.schemas.design.models import Design
from src.schemas.estimate.models import DrawConfig, EstimationResult, OptimizerOptions
from src.schemas.simgen.models import ParameterRecovery, PopulationConfig, RecoveryReport
from src.schemas.spec.models import ParameterVector, UtilitySpec
from src.services.estimate.estimator import ChoiceModelEstimator

from .choices import simulate_choices
from .population import generate_population

logger = logging.getLogger(__name__)

# half-width of the recovery interval, in standard errors
COVERAGE_SE = 2.0


def replication_seeds(master_seed: int, n_replications: int) -> List[tuple]:
    """(population seed, choice seed) per replication, derived from one master seed."""
    return [tuple(int(s) for s in child.generate_state(2)) for child in np.random.SeedSequence(master_seed).spawn(n_replications)]


def _summarise(name: str, truth: float, results: List[EstimationResult]) -> ParameterRecovery:
    estimates = np.array([getattr(r.estimates, name) for r in results])
    with_se = [(getattr(r.estimates, name), r.std_errors[name]) for r in results if r.std_errors.get(name)]
    covered = [abs(est - truth) <= COVERAGE_SE * se for est, se in with_se]
    return ParameterRecovery(
        name=name,
        truth=truth,
        mean_estimate=float(estimates.mean()),
        bias=float(estimates.mean() - truth),
        mean_std_error=float(np.mean([se for _, se in with_se])) if with_se else None,
        empirical_sd=float(estimates.std(ddof=1)) if estimates.size > 1 else 0.0,
        coverage=float(np.mean(covered)) if covered else None,
    )


def recovery_experiment(
    spec: UtilitySpec,
    truth: ParameterVector,
    config: PopulationConfig,
    design: Design,
    draws: DrawConfig,
    n_replications: int,
    options: Optional[OptimizerOptions] = None,
    start: Optional[ParameterVector] = None,
) -> RecoveryReport:
    """Generate, simulate and refit ``n_replications`` times and summarise the estimates against ``truth``.

    Fits that raise are counted in ``n_failed``; the summary covers the rest.
    Fits start at the model's default start, as in ``estimate``; pass ``truth``
    as ``start`` to start at the true parameters instead.

    :raises SimulationException: When every replication fails
    """
    truth.check_against(spec)
    if n_replications < 1:
        raise SimulationException(f"n_replications must be at least 1, got {n_replications}")

    estimator = ChoiceModelEstimator(draws, options or OptimizerOptions())
    results: List[EstimationResult] = []
    failed = 0
    for replication, (population_seed, choice_seed) in enumerate(replication_seeds(config.seed, n_replications), start=1):
        skeleton = generate_population(config.model_copy(update={"seed": population_seed}), design)
        data = simulate_choices(skeleton, spec, truth, choice_seed)
        try:
            results.append(estimator.fit(spec, data, start=start))
        except EstimationException as e:
            failed += 1
            logger.warning(f"Replication {replication}/{n_replications} of {spec.name.value} failed: {e}")

    if not results:
        raise SimulationException(f"All {n_replications} replications of {spec.name.value} failed")

    truth_values: Dict[str, float] = truth.as_dict(spec)
    report = RecoveryReport(
        spec_name=spec.name,
        truth=truth,
        n_replications=n_replications,
        n_failed=failed,
        convergence_rate=sum(r.converged for r in results) / n_replications,
        parameters=[_summarise(name, value, results) for name, value in truth_values.items()],
    )
    logger.info(f"Recovery of {spec.name.value}: {len(results)} fits, convergence rate {report.convergence_rate:.2f}")
    return report
