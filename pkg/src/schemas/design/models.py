from collections import Counter
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.schemas.spec.models import ParameterVector

ATTRIBUTES = ("dt_days", "wt_days", "pct_increase")


class LevelSets(BaseModel):
    """Admissible attribute levels."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    dt_days: List[float] = Field(default_factory=lambda: [1.0, 3.0, 5.0, 7.0], description="Current deprivation time levels")
    wt_days: List[float] = Field(default_factory=lambda: [1.0, 3.0, 5.0, 7.0], description="Additional waiting time levels")
    pct_increase: List[float] = Field(default_factory=lambda: [0.10, 0.25, 0.50, 0.75], description="Bill increase levels")

    @model_validator(mode="after")
    def check_levels(self) -> "LevelSets":
        for attribute in ATTRIBUTES:
            levels = getattr(self, attribute)
            if not levels or len(set(levels)) != len(levels):
                raise ValueError(f"{attribute} levels must be non-empty and distinct")
        if min(self.dt_days) <= 0 or min(self.wt_days) <= 0:
            raise ValueError("time levels must be positive")
        return self

    def for_attribute(self, attribute: str) -> List[float]:
        return getattr(self, attribute)


class Scenario(BaseModel):
    model_config = ConfigDict(frozen=True)

    block: int = Field(..., ge=1, description="Block id")
    dt_days: float = Field(..., gt=0)
    wt_days: float = Field(..., gt=0)
    pct_increase: float = Field(..., ge=0)


class Design(BaseModel):
    """Stated-choice design: scenarios assigned to blocks over fixed level sets."""

    model_config = ConfigDict(frozen=True)

    scenarios: List[Scenario] = Field(..., min_length=1, description="Scenarios with their block assignment")
    levels: LevelSets = Field(default_factory=LevelSets, description="Admissible levels")

    @model_validator(mode="after")
    def check_design(self) -> "Design":
        for i, scenario in enumerate(self.scenarios):
            for attribute in ATTRIBUTES:
                if getattr(scenario, attribute) not in self.levels.for_attribute(attribute):
                    raise ValueError(f"scenario {i}: {attribute}={getattr(scenario, attribute)} is not an admissible level")
        sizes = set(Counter(s.block for s in self.scenarios).values())
        if len(sizes) > 1:
            raise ValueError(f"blocks must have equal sizes, got {sorted(sizes)}")
        return self

    @property
    def block_ids(self) -> List[int]:
        return sorted({s.block for s in self.scenarios})

    def block(self, block_id: int) -> List[Scenario]:
        return [s for s in self.scenarios if s.block == block_id]


class AttributeBalance(BaseModel):
    counts: Dict[str, int] = Field(..., description="Level -> frequency, unused levels included")
    imbalance: int = Field(..., description="max frequency - min frequency")


class BalanceReport(BaseModel):
    overall: Dict[str, AttributeBalance] = Field(..., description="Attribute -> balance over the whole design")
    per_block: Dict[int, Dict[str, AttributeBalance]] = Field(..., description="Block -> attribute -> balance")

    @property
    def max_block_imbalance(self) -> int:
        return max(b.imbalance for block in self.per_block.values() for b in block.values())


class DesignSearchResult(BaseModel):
    design: Design
    initial_d_error: float = Field(..., description="inf when the starting design is singular")
    final_d_error: float
    trace: List[float] = Field(default_factory=list, description="Incumbent D-error after each proposal")
    accepted: int = 0
    seed: int = 0


class DesignSettings(BaseModel):
    """Design construction, evaluation and search settings."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    levels: LevelSets = Field(default_factory=LevelSets)
    n_blocks: int = Field(9, ge=1)
    scenarios_per_block: int = Field(4, ge=1)
    bill_reference: float = Field(150.0, gt=0, description="Bill pivot for design evaluation (dollars/month)")
    priors: ParameterVector = Field(
        default_factory=lambda: ParameterVector(asc=-1.0031, beta_c=-0.0025, beta_t=-0.1826),
        description="MNL1-form priors (asc, beta_c, beta_t)",
    )
    search_budget: int = Field(0, ge=0, description="Hill-climb proposals; 0 evaluates only")
    search_seeds: List[int] = Field(default_factory=lambda: [0], min_length=1)
    seed: Optional[int] = Field(None, description="Seed for the cyclic design builder's level shuffles")
