"""Level balance and MNL D-error of a stated-choice design."""

import logging
from collections import Counter
from typing import List

import numpy as np
from scipy.special import expit
from src.exceptions import EmptyDesignError, SingularDesignError
from src.schemas.design.models import ATTRIBUTES, AttributeBalance, BalanceReport, Design, Scenario
from src.schemas.spec.models import ModelName, ParameterVector
from src.services.spec.catalog import MODEL_CATALOG

logger = logging.getLogger(__name__)

# priors follow the linear MNL form (asc, beta_c, beta_t)
DESIGN_MODEL = MODEL_CATALOG[ModelName.MNL1]


def _balance(scenarios: List[Scenario], attribute: str, levels: List[float]) -> AttributeBalance:
    used = Counter(getattr(s, attribute) for s in scenarios)
    counts = {str(level): used.get(level, 0) for level in levels}
    return AttributeBalance(counts=counts, imbalance=max(counts.values()) - min(counts.values()))


def level_balance_report(design: Design) -> BalanceReport:
    """Level frequencies per attribute, over the whole design and within each block."""
    if not design.scenarios:
        raise EmptyDesignError("Design has no scenarios")
    overall = {a: _balance(design.scenarios, a, design.levels.for_attribute(a)) for a in ATTRIBUTES}
    per_block = {
        block: {a: _balance(design.block(block), a, design.levels.for_attribute(a)) for a in ATTRIBUTES}
        for block in design.block_ids
    }
    return BalanceReport(overall=overall, per_block=per_block)


def design_covariates(design: Design, bill_reference: float) -> np.ndarray:
    """Rows (1, C, f(DT) - f(EDT)) of the purchase-minus-wait utility, linear time."""
    dt = np.array([s.dt_days for s in design.scenarios])
    wt = np.array([s.wt_days for s in design.scenarios])
    pct = np.array([s.pct_increase for s in design.scenarios])
    return np.column_stack([np.ones_like(dt), bill_reference * (1.0 + pct), dt - (dt + wt)])


def information_matrix(design: Design, priors: ParameterVector, bill_reference: float) -> np.ndarray:
    """Fisher information of the binary logit at ``priors``, summed over scenarios."""
    if not design.scenarios:
        raise EmptyDesignError("Design has no scenarios")
    beta = priors.to_array(DESIGN_MODEL)
    x = design_covariates(design, bill_reference)
    p = expit(x @ beta)
    return x.T @ ((p * (1.0 - p))[:, None] * x)


def d_error(design: Design, priors: ParameterVector, bill_reference: float = 150.0) -> float:
    """det(I^-1)^(1/K) for the K = 3 prior parameters; smaller is better.

    :raises SingularDesignError: When the information matrix cannot identify the priors
    :raises ParameterMismatchError: When ``priors`` are not in (asc, beta_c, beta_t) form
    """
    info = information_matrix(design, priors, bill_reference)
    k = info.shape[0]
    # logit weights are positive, so the information has the rank of the covariates
    rank = np.linalg.matrix_rank(design_covariates(design, bill_reference))
    if rank < k:
        raise SingularDesignError(f"Design information matrix has rank {rank} < {k}")
    sign, logdet = np.linalg.slogdet(info)
    if sign <= 0:
        raise SingularDesignError("Design information matrix is not positive definite")
    return float(np.exp(-logdet / k))


def d_error_or_inf(design: Design, priors: ParameterVector, bill_reference: float) -> float:
    try:
        return d_error(design, priors, bill_reference)
    except SingularDesignError:
        return float("inf")

