from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.schemas.spec.models import ModelName, ParameterVector


class BillFamily(str, Enum):
    LOGNORMAL = "lognormal"
    CONSTANT = "constant"
    UNIFORM = "uniform"


class BillDistribution(BaseModel):
    """Monthly bill distribution (dollars). Log-normal is truncated to [lower, upper]."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    family: BillFamily = BillFamily.LOGNORMAL
    median: float = Field(150.0, gt=0, description="Median (lognormal) or value (constant)")
    log_scale: float = Field(0.4, gt=0, description="Standard deviation of log bill")
    lower: float = Field(30.0, gt=0, description="Truncation / uniform lower bound")
    upper: float = Field(1000.0, gt=0, description="Truncation / uniform upper bound")

    @model_validator(mode="after")
    def check_bounds(self) -> "BillDistribution":
        if self.lower >= self.upper:
            raise ValueError("lower must be below upper")
        if self.family is BillFamily.LOGNORMAL and not self.lower <= self.median <= self.upper:
            raise ValueError("median must lie inside the truncation bounds")
        return self


class PopulationConfig(BaseModel):
    """Synthetic respondent population."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_respondents: int = Field(680, ge=1)
    bill_distribution: BillDistribution = Field(default_factory=BillDistribution)
    children_flag_rate: float = Field(0.432, ge=0, le=1, description="P(CH = 1)")
    income_split_rate: float = Field(0.628, ge=0, le=1, description="P(low income)")
    seed: int = 20240901


class ParameterRecovery(BaseModel):
    name: str
    truth: float
    mean_estimate: float
    bias: float
    mean_std_error: Optional[float] = Field(None, description="Mean over replications with available standard errors")
    empirical_sd: float
    coverage: Optional[float] = Field(None, description="Share of replications whose +/-2 SE interval covers the truth")


class RecoveryReport(BaseModel):
    spec_name: ModelName
    truth: ParameterVector
    n_replications: int
    n_failed: int = Field(0, description="Replications whose fit raised")
    convergence_rate: float
    parameters: List[ParameterRecovery]
