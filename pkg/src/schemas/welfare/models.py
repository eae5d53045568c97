from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from src.schemas.spec.models import ModelName, ParameterVector, TransformKind

MONTHS_PER_COMMITMENT = 12


class DCFUnit(str, Enum):
    """Dollar unit of deprivation costs."""

    MONTHLY_EQUIVALENT = "monthly_equivalent"
    TOTAL_12_MONTH = "total_12_month"

    @property
    def multiplier(self) -> int:
        return MONTHS_PER_COMMITMENT if self is DCFUnit.TOTAL_12_MONTH else 1


class IntegrationMethod(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


def default_time_grid() -> List[float]:
    return [0.5 * i for i in range(61)]


class DCFConfig(BaseModel):
    """Curve generation settings."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    time_grid: List[float] = Field(default_factory=default_time_grid, description="Days, strictly increasing from 0")
    unit: DCFUnit = Field(DCFUnit.TOTAL_12_MONTH, description="Reporting unit")
    ch: int = Field(0, ge=0, le=1, description="Children flag used for interacted models")
    transform_variant: Optional[TransformKind] = Field(None, description="Box-Cox or power override for tau models")
    quadrature_tolerance: float = Field(1e-6, gt=0, description="Absolute tolerance of adaptive Simpson (dollars)")
    method: IntegrationMethod = Field(IntegrationMethod.CLOSED_FORM, description="Closed-form antiderivative or quadrature")

    @field_validator("time_grid")
    @classmethod
    def validate_grid(cls, v: List[float]) -> List[float]:
        if not v or v[0] != 0:
            raise ValueError("time_grid must start at 0")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("time_grid must be strictly increasing")
        return v

    @field_validator("transform_variant")
    @classmethod
    def validate_variant(cls, v: Optional[TransformKind]) -> Optional[TransformKind]:
        if v is not None and v not in (TransformKind.BOXCOX, TransformKind.POWER):
            raise ValueError("transform_variant must be boxcox or power")
        return v


class DCFCurve(BaseModel):
    """Deprivation cost against deprivation time, anchored at zero."""

    times: List[float] = Field(..., description="Days")
    costs: List[float] = Field(..., description="Dollars in `unit`")
    spec_name: ModelName = Field(..., description="Model the curve was derived from")
    transform: TransformKind = Field(..., description="Time transform used")
    params_used: ParameterVector = Field(..., description="Coefficients the curve was derived from")
    unit: DCFUnit = Field(..., description="Dollar unit")
    ch: int = Field(0, description="Children flag")

    @model_validator(mode="after")
    def check_lengths(self) -> "DCFCurve":
        if len(self.times) != len(self.costs):
            raise ValueError("times and costs must have equal length")
        return self


class PolyFit(BaseModel):
    """Least-squares polynomial in ascending powers of days."""

    degree: int = Field(..., ge=1, description="Polynomial degree")
    coefficients: List[float] = Field(..., description="c0, c1, ... (dollars per day^k)")
    r_squared: float = Field(..., description="Coefficient of determination")
    adj_r_squared: float = Field(..., description="1 - (1 - R^2)(n - 1)/(n - degree - 1)")
    n_points: int = Field(..., description="Grid points fitted")
    rank_deficient: bool = Field(False, description="True when the curve has no variance (R^2 reported as 1 on exact fit)")
    spec_name: Optional[ModelName] = None
    unit: Optional[DCFUnit] = None

    @model_validator(mode="after")
    def check_coefficients(self) -> "PolyFit":
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("coefficient count must equal degree + 1")
        return self
