import logging
from typing import Optional

from src.schemas.design.models import BalanceReport, Design, DesignSearchResult, DesignSettings
from src.schemas.spec.models import ParameterVector

from .builder import build_balanced_design
from .evaluation import d_error, d_error_or_inf, level_balance_report
from .search import improve_design_multistart

logger = logging.getLogger(__name__)


class DesignEvaluator:
    """Builds, scores and improves designs under one set of priors and a reference bill."""

    def __init__(self, settings: DesignSettings):
        self.settings = settings

    @property
    def priors(self) -> ParameterVector:
        return self.settings.priors

    def default_design(self) -> Design:
        return build_balanced_design(
            self.settings.levels,
            n_blocks=self.settings.n_blocks,
            scenarios_per_block=self.settings.scenarios_per_block,
            seed=self.settings.seed,
        )

    def d_error(self, design: Design) -> float:
        return d_error(design, self.priors, self.settings.bill_reference)

    def balance(self, design: Design) -> BalanceReport:
        return level_balance_report(design)

    def improve(self, design: Design, budget: Optional[int] = None) -> DesignSearchResult:
        """Multi-start hill-climb over the configured seeds."""
        budget = self.settings.search_budget if budget is None else budget
        return improve_design_multistart(design, self.priors, budget, self.settings.search_seeds, self.settings.bill_reference)

    def report(self, design: Design) -> dict:
        """D-error (None when singular), balance and, with a search budget, the improved design."""
        error = d_error_or_inf(design, self.priors, self.settings.bill_reference)
        payload = {
            "n_scenarios": len(design.scenarios),
            "n_blocks": len(design.block_ids),
            "bill_reference": self.settings.bill_reference,
            "priors": self.priors.model_dump(mode="json", exclude_none=True),
            "d_error": error if error != float("inf") else None,
            "singular": error == float("inf"),
            "balance": self.balance(design).model_dump(mode="json"),
        }
        if self.settings.search_budget > 0:
            search = self.improve(design)
            payload["search"] = {
                "seed": search.seed,
                "initial_d_error": None if search.initial_d_error == float("inf") else search.initial_d_error,
                "final_d_error": search.final_d_error,
                "accepted": search.accepted,
                "trace": [None if v == float("inf") else v for v in search.trace],
                "design": [s.model_dump(mode="json") for s in search.design.scenarios],
            }
        if error == float("inf"):
            logger.warning("Design information matrix is singular for the priors")
        return payload
