"""Panel-level transformations of a loaded choice dataset."""

import logging
from typing import Callable, Dict, List, Tuple

import pandas as pd
from src.exceptions import ConfigurationError, UnknownLexicographicRuleError
from src.schemas.dataset.models import CHILDREN_SHARE_THRESHOLD, ChoiceDataset, ChoiceObservation, IncomeBracket

logger = logging.getLogger(__name__)

LexicographicRule = Callable[[List[ChoiceObservation]], bool]


def derive_children_flag(children_count: int, household_size: int) -> int:
    """CH = 1 when children make up strictly more than 20% of the household."""
    return int(children_count > CHILDREN_SHARE_THRESHOLD * household_size)


def expected_total_deprivation(dt_days: float, wt_days: float) -> float:
    return dt_days + wt_days


def _answers(observations: List[ChoiceObservation]) -> List[bool]:
    return [obs.chose_purchase for obs in observations if obs.chose_purchase is not None]


def _same_alternative(observations: List[ChoiceObservation]) -> bool:
    answers = _answers(observations)
    return len(answers) >= 2 and len(set(answers)) == 1


def _always_wait(observations: List[ChoiceObservation]) -> bool:
    answers = _answers(observations)
    return len(answers) >= 2 and not any(answers)


def _always_purchase(observations: List[ChoiceObservation]) -> bool:
    answers = _answers(observations)
    return len(answers) >= 2 and all(answers)


LEXICOGRAPHIC_RULES: Dict[str, LexicographicRule] = {
    "same-alternative": _same_alternative,
    "always-wait": _always_wait,
    "always-purchase": _always_purchase,
    "none": lambda observations: False,
}


def filter_lexicographic(dataset: ChoiceDataset, rule: str = "same-alternative") -> Tuple[ChoiceDataset, List[str]]:
    """Drop respondents flagged by ``rule`` with all their observations.

    :returns: Retained dataset and the excluded respondent ids in dataset order
    :raises UnknownLexicographicRuleError: When ``rule`` is not registered
    """
    if rule not in LEXICOGRAPHIC_RULES:
        logger.error(f"Unknown lexicographic rule {rule!r}")
        raise UnknownLexicographicRuleError(f"Unknown lexicographic rule {rule!r}; expected one of {sorted(LEXICOGRAPHIC_RULES)}")

    flagged = LEXICOGRAPHIC_RULES[rule]
    excluded = [rid for rid, observations in dataset.observations_by_respondent().items() if flagged(observations)]
    if not excluded:
        return dataset, []

    dropped = set(excluded)
    kept = {r.id for r in dataset.respondents if r.id not in dropped}
    logger.info(f"Lexicographic rule {rule!r} excluded {len(excluded)} of {dataset.n_respondents} respondents")
    return dataset.subset(kept, note=f"lexicographic:{rule}"), excluded


def split_by_income(dataset: ChoiceDataset, threshold: IncomeBracket) -> Tuple[ChoiceDataset, ChoiceDataset, List[str]]:
    """Partition respondents at an income bracket boundary.

    Brackets below ``threshold`` go to the low split, the rest to the high split;
    respondents without an answer are returned as unassigned.
    """
    if threshold in (IncomeBracket.NOT_ANSWERED, IncomeBracket.UNDER_25K):
        raise ConfigurationError(f"{threshold.name} is not an interior bracket boundary")

    low, high, unassigned = set(), set(), []
    for respondent in dataset.respondents:
        bracket = respondent.income_bracket
        if bracket is None or bracket == IncomeBracket.NOT_ANSWERED:
            unassigned.append(respondent.id)
        elif bracket < threshold:
            low.add(respondent.id)
        else:
            high.add(respondent.id)

    logger.info(f"Income split at {threshold.lower_bound}: low={len(low)}, high={len(high)}, unassigned={len(unassigned)}")
    return (
        dataset.subset(low, note=f"income<{threshold.lower_bound}"),
        dataset.subset(high, note=f"income>={threshold.lower_bound}"),
        unassigned,
    )


def purchase_share_by_children(dataset: ChoiceDataset) -> pd.DataFrame:
    """Purchase and wait shares of answered scenarios by children flag (rows CH = 0 / 1)."""
    by_id = dataset.respondents_by_id()
    rows = [
        {"ch": by_id[obs.respondent_id].children_flag, "purchase": float(obs.chose_purchase)}
        for obs in dataset.observations
        if obs.chose_purchase is not None and by_id[obs.respondent_id].children_flag is not None
    ]
    frame = pd.DataFrame(rows, columns=["ch", "purchase"])
    summary = frame.groupby("ch")["purchase"].agg(n_obs="count", purchase_share="mean")
    summary["wait_share"] = 1.0 - summary["purchase_share"]
    return summary
