import logging

import numpy as np
from scipy.special import expit
from src.exceptions import SimulationException
from src.schemas.dataset.models import ChoiceDataset
from src.schemas.spec.models import ParameterVector, UtilitySpec
from src.services.spec.utility import utility_difference

logger = logging.getLogger(__name__)


def simulate_choices(skeleton: ChoiceDataset, spec: UtilitySpec, truth: ParameterVector, seed: int) -> ChoiceDataset:
    """Fill ``chose_purchase`` with Bernoulli draws on the logit purchase probability.

    Panel specs draw one xi ~ N(0, sigma_xi^2) per respondent, shared by all of
    their scenarios. Respondents without a children flag count as CH = 0.

    :raises ParameterMismatchError: When ``truth`` does not match ``spec``
    """
    truth.check_against(spec)
    if spec.random_time_coefficient:
        raise SimulationException(f"{spec.name.value}: simulating a random time coefficient is not supported")
    if not skeleton.observations:
        raise SimulationException("Skeleton has no observations")

    rng = np.random.default_rng(seed)
    position = {r.id: i for i, r in enumerate(skeleton.respondents)}
    xi = rng.standard_normal(len(skeleton.respondents)) * (truth.sigma_xi or 0.0)

    by_id = skeleton.respondents_by_id()
    observations = skeleton.observations
    v = utility_difference(
        spec,
        truth,
        np.array([o.dt_days for o in observations]),
        np.array([o.wt_days for o in observations]),
        np.array([o.cost_final for o in observations]),
        np.array([float(by_id[o.respondent_id].children_flag or 0) for o in observations]),
    )
    v = v + xi[[position[o.respondent_id] for o in observations]]
    chose = rng.random(len(observations)) < expit(v)

    logger.info(f"Simulated {len(observations)} {spec.name.value} choices, purchase share {chose.mean():.3f}")
    provenance = {**skeleton.provenance, "simulated_from": spec.name.value, "choice_seed": seed}
    return ChoiceDataset(
        respondents=skeleton.respondents,
        observations=[o.model_copy(update={"chose_purchase": bool(c)}) for o, c in zip(observations, chose)],
        provenance=provenance,
    )
