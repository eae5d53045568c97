import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from src.exceptions import EmptyDatasetError
from src.schemas.dataset.models import ChoiceDataset

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChoiceArrays:
    """Observations grouped by respondent (sorted by id, then scenario) as flat arrays."""

    respondent_ids: Tuple[str, ...]
    starts: np.ndarray  # first observation of each respondent
    respondent_index: np.ndarray  # respondent position of each observation
    dt_days: np.ndarray
    wt_days: np.ndarray
    cost_final: np.ndarray
    ch: np.ndarray
    chosen: np.ndarray  # 1.0 purchase, 0.0 wait

    @property
    def n_obs(self) -> int:
        return int(self.chosen.shape[0])

    @property
    def n_respondents(self) -> int:
        return len(self.respondent_ids)

    @classmethod
    def from_dataset(cls, data: ChoiceDataset, require_children_flag: bool = False) -> "ChoiceArrays":
        """Answered observations of ``data``.

        :param require_children_flag: Drop respondents whose CH cannot be derived
        :raises EmptyDatasetError: When no answered observation remains
        """
        by_id = data.respondents_by_id()
        grouped = data.observations_by_respondent()
        ids, starts, index, dt, wt, cost, ch, chosen = [], [], [], [], [], [], [], []
        dropped = 0
        for rid in sorted(grouped):
            answered = sorted((o for o in grouped[rid] if o.chose_purchase is not None), key=lambda o: o.scenario_index)
            if not answered:
                continue
            flag = by_id[rid].children_flag
            if flag is None and require_children_flag:
                dropped += 1
                continue
            starts.append(len(chosen))
            for obs in answered:
                index.append(len(ids))
                dt.append(obs.dt_days)
                wt.append(obs.wt_days)
                cost.append(obs.cost_final)
                ch.append(float(flag or 0))
                chosen.append(float(obs.chose_purchase))
            ids.append(rid)

        if dropped:
            logger.warning(f"Dropped {dropped} respondents without household composition from a children-interacted model")
        if not chosen:
            raise EmptyDatasetError("No answered observations to estimate on")

        return cls(
            respondent_ids=tuple(ids),
            starts=np.asarray(starts, dtype=np.intp),
            respondent_index=np.asarray(index, dtype=np.intp),
            dt_days=np.asarray(dt, dtype=float),
            wt_days=np.asarray(wt, dtype=float),
            cost_final=np.asarray(cost, dtype=float),
            ch=np.asarray(ch, dtype=float),
            chosen=np.asarray(chosen, dtype=float),
        )

    def chunk(self, first: int, last: int) -> "ChoiceArrays":
        """Respondents ``first`` (inclusive) to ``last`` (exclusive) with their observations."""
        lo = int(self.starts[first])
        hi = int(self.starts[last]) if last < self.n_respondents else self.n_obs
        return ChoiceArrays(
            respondent_ids=self.respondent_ids[first:last],
            starts=self.starts[first:last] - lo,
            respondent_index=self.respondent_index[lo:hi] - first,
            dt_days=self.dt_days[lo:hi],
            wt_days=self.wt_days[lo:hi],
            cost_final=self.cost_final[lo:hi],
            ch=self.ch[lo:hi],
            chosen=self.chosen[lo:hi],
        )
