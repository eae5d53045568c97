import logging
from typing import Dict, List, Optional

import numpy as np
from src.exceptions import EmptyDesignError
from src.schemas.design.models import ATTRIBUTES, Design, LevelSets, Scenario

logger = logging.getLogger(__name__)


def build_balanced_design(
    levels: LevelSets,
    n_blocks: int = 9,
    scenarios_per_block: int = 4,
    seed: Optional[int] = None,
) -> Design:
    """Cyclic design: within block b, scenario j takes level j of DT, j + b of WT and j + 2b + b // L of P.

    Every level appears once per block when a block holds as many scenarios as
    an attribute has levels, and blocks are pairwise distinct for up to L^2 blocks.
    A seed shuffles the level order of each attribute before assignment.
    """
    if n_blocks < 1 or scenarios_per_block < 1:
        raise EmptyDesignError("A design needs at least one block of at least one scenario")

    orders: Dict[str, List[float]] = {a: list(levels.for_attribute(a)) for a in ATTRIBUTES}
    if seed is not None:
        rng = np.random.default_rng(seed)
        orders = {a: [orders[a][i] for i in rng.permutation(len(orders[a]))] for a in ATTRIBUTES}

    n_dt, n_wt, n_p = (len(orders[a]) for a in ATTRIBUTES)
    scenarios = []
    for block in range(n_blocks):
        for j in range(scenarios_per_block):
            scenarios.append(
                Scenario(
                    block=block + 1,
                    dt_days=orders["dt_days"][j % n_dt],
                    wt_days=orders["wt_days"][(j + block) % n_wt],
                    pct_increase=orders["pct_increase"][(j + 2 * block + block // n_p) % n_p],
                )
            )
    logger.info(f"Built cyclic design with {n_blocks} blocks of {scenarios_per_block} scenarios")
    return Design(scenarios=scenarios, levels=levels)
