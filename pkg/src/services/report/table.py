"""Side-by-side estimation table: one column per model, estimate (t-stat) cells and fit statistics."""

import logging
from typing import Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field
from src.exceptions import ConfigurationError
from src.schemas.estimate.models import EstimationResult
from src.schemas.spec.models import ModelName
from src.services.estimate.statistics import adjusted_rho_square, equal_shares_loglik
from src.services.spec.catalog import MODEL_CATALOG, PUBLISHED_ESTIMATES

logger = logging.getLogger(__name__)

PARAMETER_ROWS: Dict[str, str] = {
    "asc": "Constant",
    "beta_c": "Cost",
    "beta_t": "Deprivation Time",
    "tau": "Box-Cox parameter",
    "beta_T": "Exponential time",
    "delta_cht": "Children-time",
    "sigma_xi": "Standard deviation, panel effect",
}
STATISTIC_ROWS = ["N", "Respondents", "Log-likelihood", "Adj. rho-square"]

# printed and recomputed adjusted rho-squares further apart than this get a note
_RHO_NOTE_TOLERANCE = 5e-3


class ReportColumn(BaseModel):
    """One model's cells before formatting."""

    name: ModelName
    estimates: Dict[str, float] = Field(..., description="Parameter name to estimate")
    t_stats: Dict[str, Optional[float]] = Field(default_factory=dict)
    n_obs: int
    n_respondents: int
    ll_final: float
    adj_rho_sq: float

    @classmethod
    def from_result(cls, result: EstimationResult) -> "ReportColumn":
        spec = MODEL_CATALOG[result.spec_name].with_transform(result.transform)
        return cls(
            name=result.spec_name,
            estimates=result.estimates.as_dict(spec),
            t_stats=result.t_stats,
            n_obs=result.n_obs,
            n_respondents=result.n_respondents,
            ll_final=result.ll_final,
            adj_rho_sq=result.adj_rho_sq,
        )

    @classmethod
    def published(cls, name: ModelName) -> "ReportColumn":
        """Published column with its printed adjusted rho-square."""
        column = PUBLISHED_ESTIMATES[name]
        return cls(
            name=name,
            estimates=column.estimates.as_dict(MODEL_CATALOG[name]),
            t_stats=dict(column.t_stats),
            n_obs=column.n_obs,
            n_respondents=column.n_respondents,
            ll_final=column.ll_final,
            adj_rho_sq=column.adj_rho_sq_printed,
        )


def _cell(estimate: float, t_stat: Optional[float]) -> str:
    if t_stat is None:
        return f"{estimate:.4f} (n/a)"
    return f"{estimate:.4f} ({t_stat:.2f})"


def results_table(columns: List[ReportColumn]) -> pd.DataFrame:
    """Rows in published order; parameters a model lacks are left blank.

    :raises ConfigurationError: When there is nothing to tabulate
    """
    if not columns:
        raise ConfigurationError("report needs at least one estimation result")
    frame = pd.DataFrame(index=list(PARAMETER_ROWS.values()) + STATISTIC_ROWS)
    for column in columns:
        cells = {
            label: _cell(column.estimates[name], column.t_stats.get(name)) if name in column.estimates else ""
            for name, label in PARAMETER_ROWS.items()
        }
        cells.update(
            {
                "N": str(column.n_obs),
                "Respondents": str(column.n_respondents),
                "Log-likelihood": f"{column.ll_final:.2f}",
                "Adj. rho-square": f"{column.adj_rho_sq:.4f}",
            }
        )
        frame[column.name.value] = pd.Series(cells)
    return frame


def rho_square_notes(names: List[ModelName]) -> List[str]:
    """Notes for published columns whose printed adjusted rho-square disagrees with the equal-shares null."""
    notes = []
    for name in names:
        column = PUBLISHED_ESTIMATES.get(name)
        if column is None:
            continue
        k = MODEL_CATALOG[name].n_parameters
        null = equal_shares_loglik(column.n_obs)
        recomputed = adjusted_rho_square(column.ll_final, null, k)
        if abs(recomputed - column.adj_rho_sq_printed) > _RHO_NOTE_TOLERANCE:
            notes.append(
                f"{name.value}: published adj. rho-square {column.adj_rho_sq_printed:.3f} uses an unstated null; "
                f"against N ln 0.5 = {null:.2f} with k = {k} its LL {column.ll_final:.2f} gives {recomputed:.4f}"
            )
    return notes


def render_report(columns: List[ReportColumn], title: str = "Estimation results") -> str:
    """Aligned text table followed by the rho-square notes."""
    frame = results_table(columns)
    lines = [title, "estimate (t-statistic)", "", frame.to_string()]
    notes = rho_square_notes([c.name for c in columns])
    if notes:
        lines += ["", "Notes:"] + [f"  {note}" for note in notes]
    logger.info(f"Rendered report over {len(columns)} models with {len(notes)} notes")
    return "\n".join(lines) + "\n"
