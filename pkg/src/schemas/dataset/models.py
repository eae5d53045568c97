from collections import defaultdict
from enum import Enum, IntEnum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_SCENARIOS_PER_RESPONDENT = 4
CHILDREN_SHARE_THRESHOLD = 0.2


class IncomeBracket(IntEnum):
    """Annual household income brackets, ordered; NOT_ANSWERED sorts first but is never split."""

    NOT_ANSWERED = 0
    UNDER_25K = 1
    FROM_25K_TO_50K = 2
    FROM_50K_TO_75K = 3
    FROM_75K_TO_100K = 4
    FROM_100K_TO_150K = 5
    OVER_150K = 6

    @property
    def lower_bound(self) -> Optional[int]:
        """Lower bracket boundary in dollars per year."""
        return _BRACKET_LOWER_BOUNDS.get(self)

    @classmethod
    def from_boundary(cls, dollars: int) -> "IncomeBracket":
        for bracket, bound in _BRACKET_LOWER_BOUNDS.items():
            if bound == dollars and bracket != cls.UNDER_25K:
                return bracket
        raise ValueError(f"{dollars} is not an income bracket boundary")

    @classmethod
    def parse(cls, raw: Any) -> "IncomeBracket":
        """Accept integer codes 0-6 or the labels used in survey exports."""
        if isinstance(raw, IncomeBracket):
            return raw
        text = str(raw).strip().lower()
        if text in _INCOME_LABELS:
            return _INCOME_LABELS[text]
        try:
            return cls(int(float(text)))
        except ValueError:
            raise ValueError(f"Unrecognised income bracket: {raw!r}")


_BRACKET_LOWER_BOUNDS = {
    IncomeBracket.UNDER_25K: 0,
    IncomeBracket.FROM_25K_TO_50K: 25_000,
    IncomeBracket.FROM_50K_TO_75K: 50_000,
    IncomeBracket.FROM_75K_TO_100K: 75_000,
    IncomeBracket.FROM_100K_TO_150K: 100_000,
    IncomeBracket.OVER_150K: 150_000,
}

_INCOME_LABELS = {
    "": IncomeBracket.NOT_ANSWERED,
    "prefer not to answer": IncomeBracket.NOT_ANSWERED,
    "not_answered": IncomeBracket.NOT_ANSWERED,
    "<25000": IncomeBracket.UNDER_25K,
    "25000-49999": IncomeBracket.FROM_25K_TO_50K,
    "50000-74999": IncomeBracket.FROM_50K_TO_75K,
    "75000-99999": IncomeBracket.FROM_75K_TO_100K,
    "100000-149999": IncomeBracket.FROM_100K_TO_150K,
    ">149999": IncomeBracket.OVER_150K,
}


class StormExperience(str, Enum):
    BERYL_ONLY = "beryl_only"
    MAY_ONLY = "may_only"
    BOTH = "both"
    NEITHER = "neither"


class Respondent(BaseModel):
    """Sociodemographic record of one survey respondent."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(..., min_length=1, description="Opaque respondent identifier")
    income_bracket: Optional[IncomeBracket] = Field(None, description="Annual income bracket")
    household_size: Optional[int] = Field(None, ge=1, description="Persons in the household")
    children_count: Optional[int] = Field(None, ge=0, description="Children in the household")
    age: Optional[float] = Field(None, ge=0, description="Age in years")
    gender: Optional[str] = Field(None, description="Self-reported gender")
    storm_experience: Optional[StormExperience] = Field(None, description="Outage events experienced")

    @model_validator(mode="after")
    def check_household(self) -> "Respondent":
        if self.children_count is not None and self.household_size is not None and self.children_count > self.household_size:
            raise ValueError(f"children_count {self.children_count} exceeds household_size {self.household_size}")
        return self

    @property
    def children_flag(self) -> Optional[int]:
        """CH, or None when household composition is incomplete."""
        if self.children_count is None or self.household_size is None:
            return None
        return int(self.children_count > CHILDREN_SHARE_THRESHOLD * self.household_size)


class ChoiceObservation(BaseModel):
    """One purchase-or-wait scenario answered by one respondent."""

    model_config = ConfigDict(frozen=True)

    respondent_id: str = Field(..., min_length=1, description="Respondent identifier")
    block_id: int = Field(..., ge=1, le=9, description="Design block")
    scenario_index: int = Field(..., ge=1, le=MAX_SCENARIOS_PER_RESPONDENT, description="Position within the block")
    dt_days: float = Field(..., gt=0, description="Current deprivation time DT (days)")
    wt_days: float = Field(..., gt=0, description="Additional waiting time WT (days)")
    bill_base: float = Field(..., gt=0, description="Monthly electricity bill B (dollars)")
    pct_increase: float = Field(..., ge=0, description="Bill increase P as a fraction")
    cost_final: float = Field(..., gt=0, description="Pivoted monthly bill C = B(1+P) (dollars)")
    chose_purchase: Optional[bool] = Field(None, description="True for purchase, False for wait, None before simulation")

    @model_validator(mode="after")
    def check_pivot(self) -> "ChoiceObservation":
        expected = self.bill_base * (1.0 + self.pct_increase)
        if abs(self.cost_final - expected) > 0.005 + 1e-9 * abs(expected):
            raise ValueError(f"cost_final {self.cost_final} != bill_base*(1+pct_increase) = {expected}")
        return self

    @property
    def edt_days(self) -> float:
        return self.dt_days + self.wt_days


class ChoiceDataset(BaseModel):
    """Panel of respondents and their scenario answers."""

    model_config = ConfigDict(frozen=True)

    respondents: List[Respondent] = Field(default_factory=list, description="Respondents")
    observations: List[ChoiceObservation] = Field(default_factory=list, description="Scenario answers")
    provenance: Dict[str, Any] = Field(default_factory=dict, description="Source file, filters applied, skipped rows")

    @field_validator("respondents")
    @classmethod
    def check_unique_respondents(cls, v: List[Respondent]) -> List[Respondent]:
        seen = set()
        for respondent in v:
            if respondent.id in seen:
                raise ValueError(f"Duplicate respondent id {respondent.id}")
            seen.add(respondent.id)
        return v

    @model_validator(mode="after")
    def check_panel(self) -> "ChoiceDataset":
        known = {r.id for r in self.respondents}
        scenarios: Dict[str, set] = defaultdict(set)
        for obs in self.observations:
            if obs.respondent_id not in known:
                raise ValueError(f"Observation references unknown respondent {obs.respondent_id}")
            if obs.scenario_index in scenarios[obs.respondent_id]:
                raise ValueError(f"Respondent {obs.respondent_id} answers scenario {obs.scenario_index} twice")
            scenarios[obs.respondent_id].add(obs.scenario_index)
        return self

    @property
    def n_respondents(self) -> int:
        return len(self.respondents)

    @property
    def n_obs(self) -> int:
        return len(self.observations)

    @property
    def is_complete(self) -> bool:
        """True when every observation carries a choice."""
        return all(obs.chose_purchase is not None for obs in self.observations)

    def respondents_by_id(self) -> Dict[str, Respondent]:
        return {r.id: r for r in self.respondents}

    def observations_by_respondent(self) -> Dict[str, List[ChoiceObservation]]:
        grouped: Dict[str, List[ChoiceObservation]] = {r.id: [] for r in self.respondents}
        for obs in self.observations:
            grouped[obs.respondent_id].append(obs)
        return grouped

    def subset(self, respondent_ids: set, note: Optional[str] = None) -> "ChoiceDataset":
        """Respondents in `respondent_ids` with all their observations."""
        provenance = dict(self.provenance)
        if note:
            provenance["filters"] = [*provenance.get("filters", []), note]
        return ChoiceDataset(
            respondents=[r for r in self.respondents if r.id in respondent_ids],
            observations=[o for o in self.observations if o.respondent_id in respondent_ids],
            provenance=provenance,
        )


class ColumnSchema(BaseModel):
    """Mapping from dataset fields to header names in the delimited file."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    delimiter: str = Field(",", min_length=1, max_length=1, description="Field delimiter")
    respondent_id: str = "respondent_id"
    block_id: str = "block"
    scenario_index: str = "scenario"
    dt_days: str = "dt"
    wt_days: str = "wt"
    bill_base: str = "bill"
    pct_increase: Optional[str] = "pct_increase"
    cost_final: Optional[str] = "cost"
    chose_purchase: str = "choice"
    income_bracket: Optional[str] = "income"
    household_size: Optional[str] = "household_size"
    children_count: Optional[str] = "children"
    age: Optional[str] = "age"
    gender: Optional[str] = "gender"
    storm_experience: Optional[str] = "storm"

    @model_validator(mode="after")
    def check_cost_source(self) -> "ColumnSchema":
        if self.pct_increase is None and self.cost_final is None:
            raise ValueError("Map at least one of pct_increase or cost_final")
        return self

    def required_columns(self) -> Dict[str, str]:
        return {
            "respondent_id": self.respondent_id,
            "block_id": self.block_id,
            "scenario_index": self.scenario_index,
            "dt_days": self.dt_days,
            "wt_days": self.wt_days,
            "bill_base": self.bill_base,
            "chose_purchase": self.chose_purchase,
        }

    def respondent_columns(self) -> Dict[str, str]:
        fields = ("income_bracket", "household_size", "children_count", "age", "gender", "storm_experience")
        return {f: getattr(self, f) for f in fields if getattr(self, f) is not None}
