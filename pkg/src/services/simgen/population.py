import logging

import numpy as np
from scipy.stats import truncnorm
from src.exceptions import EmptyDesignError, SimulationException
from src.schemas.dataset.models import MAX_SCENARIOS_PER_RESPONDENT, ChoiceDataset, ChoiceObservation, IncomeBracket, Respondent
from src.schemas.design.models import Design
from src.schemas.simgen.models import BillDistribution, BillFamily, PopulationConfig

logger = logging.getLogger(__name__)

MAX_BLOCKS = 9
_LOW_INCOME = [IncomeBracket.UNDER_25K, IncomeBracket.FROM_25K_TO_50K, IncomeBracket.FROM_50K_TO_75K]
_HIGH_INCOME = [IncomeBracket.FROM_75K_TO_100K, IncomeBracket.FROM_100K_TO_150K, IncomeBracket.OVER_150K]


def sample_bills(rng: np.random.Generator, distribution: BillDistribution, size: int) -> np.ndarray:
    """Monthly bills in dollars, rounded to cents."""
    if distribution.family == BillFamily.CONSTANT:
        bills = np.full(size, distribution.median)
    elif distribution.family == BillFamily.UNIFORM:
        bills = rng.uniform(distribution.lower, distribution.upper, size=size)
    else:
        log_median = np.log(distribution.median)
        a = (np.log(distribution.lower) - log_median) / distribution.log_scale
        b = (np.log(distribution.upper) - log_median) / distribution.log_scale
        z = truncnorm.rvs(a, b, size=size, random_state=rng)
        bills = np.exp(log_median + distribution.log_scale * z)
    return np.round(bills, 2)


def generate_population(config: PopulationConfig, design: Design) -> ChoiceDataset:
    """Synthetic respondents with a uniformly drawn block, bill, CH and income; choices left empty.

    Households hold 2 to 6 persons; CH = 1 households get floor(size / 5) + 1 children.

    :raises EmptyDesignError: When the design has no blocks
    :raises SimulationException: When blocks exceed the survey shape (9 blocks of at most 4 scenarios)
    """
    blocks = design.block_ids
    if not blocks:
        raise EmptyDesignError("Design has no blocks")
    if max(blocks) > MAX_BLOCKS or len(design.block(blocks[0])) > MAX_SCENARIOS_PER_RESPONDENT:
        raise SimulationException(
            f"Synthetic panels support block ids up to {MAX_BLOCKS} with at most {MAX_SCENARIOS_PER_RESPONDENT} scenarios each"
        )

    rng = np.random.default_rng(config.seed)
    n = config.n_respondents
    assigned = rng.choice(np.asarray(blocks), size=n)
    bills = sample_bills(rng, config.bill_distribution, n)
    has_children = rng.random(n) < config.children_flag_rate
    low_income = rng.random(n) < config.income_split_rate
    household = rng.integers(2, 7, size=n)
    bracket_draws = rng.integers(0, 3, size=n)

    respondents, observations = [], []
    width = max(5, len(str(n)))
    for i in range(n):
        rid = f"S{i + 1:0{width}d}"
        size = int(household[i])
        respondents.append(
            Respondent(
                id=rid,
                income_bracket=(_LOW_INCOME if low_income[i] else _HIGH_INCOME)[int(bracket_draws[i])],
                household_size=size,
                children_count=size // 5 + 1 if has_children[i] else 0,
            )
        )
        block = int(assigned[i])
        for position, scenario in enumerate(design.block(block), start=1):
            observations.append(
                ChoiceObservation(
                    respondent_id=rid,
                    block_id=block,
                    scenario_index=position,
                    dt_days=scenario.dt_days,
                    wt_days=scenario.wt_days,
                    bill_base=float(bills[i]),
                    pct_increase=scenario.pct_increase,
                    cost_final=float(bills[i]) * (1.0 + scenario.pct_increase),
                )
            )

    logger.info(f"Generated {n} synthetic respondents over {len(blocks)} blocks (seed {config.seed})")
    return ChoiceDataset(
        respondents=respondents,
        observations=observations,
        provenance={"source": "synthetic", "seed": config.seed, "filters": []},
    )
