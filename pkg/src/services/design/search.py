import logging
from typing import List, Sequence

import numpy as np
from src.exceptions import DesignException, SingularDesignError
from src.schemas.design.models import ATTRIBUTES, Design, DesignSearchResult
from src.schemas.spec.models import ParameterVector

from .evaluation import d_error, d_error_or_inf

logger = logging.getLogger(__name__)


def improve_design(
    design: Design,
    priors: ParameterVector,
    budget: int,
    seed: int,
    bill_reference: float = 150.0,
) -> DesignSearchResult:
    """Random coordinate-swap hill-climb on the D-error.

    Each proposal moves one attribute of one scenario to another admissible
    level and is kept only when the D-error strictly decreases. Proposals that
    make the information singular are skipped. A singular starting design has
    D-error inf, so any identifiable proposal is accepted.
    """
    if budget < 0:
        raise DesignException(f"budget must be non-negative, got {budget}")

    rng = np.random.default_rng(seed)
    current = design
    current_error = d_error_or_inf(design, priors, bill_reference)
    initial_error = current_error
    trace: List[float] = []
    accepted = 0

    for _ in range(budget):
        index = int(rng.integers(len(current.scenarios)))
        attribute = ATTRIBUTES[int(rng.integers(len(ATTRIBUTES)))]
        scenario = current.scenarios[index]
        alternatives = [level for level in current.levels.for_attribute(attribute) if level != getattr(scenario, attribute)]
        if not alternatives:
            trace.append(current_error)
            continue

        level = alternatives[int(rng.integers(len(alternatives)))]
        scenarios = list(current.scenarios)
        scenarios[index] = scenario.model_copy(update={attribute: level})
        candidate = Design(scenarios=scenarios, levels=current.levels)
        try:
            candidate_error = d_error(candidate, priors, bill_reference)
        except SingularDesignError:
            trace.append(current_error)
            continue

        if candidate_error < current_error:
            current, current_error = candidate, candidate_error
            accepted += 1
        trace.append(current_error)

    logger.info(f"Design search (seed {seed}): D-error {initial_error:.6g} -> {current_error:.6g}, {accepted}/{budget} accepted")
    return DesignSearchResult(
        design=current,
        initial_d_error=initial_error,
        final_d_error=current_error,
        trace=trace,
        accepted=accepted,
        seed=seed,
    )


def improve_design_multistart(
    design: Design,
    priors: ParameterVector,
    budget: int,
    seeds: Sequence[int],
    bill_reference: float = 150.0,
) -> DesignSearchResult:
    """Best of :func:`improve_design` over ``seeds``; ties go to the earlier seed."""
    if not seeds:
        raise DesignException("At least one seed is required")
    results = [improve_design(design, priors, budget, seed, bill_reference) for seed in seeds]
    return min(enumerate(results), key=lambda item: (item[1].final_d_error, item[0]))[1]
