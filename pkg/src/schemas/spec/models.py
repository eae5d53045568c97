import math
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from src.exceptions import ParameterMismatchError


class ModelName(str, Enum):
    """The ten model specifications."""

    MNL1 = "MNL1"
    MNL2 = "MNL2"
    MNL1_LOW = "MNL1-low"
    MNL1_HIGH = "MNL1-high"
    ML1 = "ML1"
    ML2 = "ML2"
    ML3 = "ML3"
    ML4 = "ML4"
    ML5 = "ML5"
    ML6 = "ML6"

    @property
    def is_mixed(self) -> bool:
        return self.value.startswith("ML")


class TransformKind(str, Enum):
    """Functional form applied to deprivation time."""

    LINEAR = "linear"
    BOXCOX = "boxcox"
    POWER = "power"
    EXPONENTIAL = "exponential"


class Alternative(str, Enum):
    PURCHASE = "purchase"
    WAIT = "wait"


CHILDREN_MODELS = {ModelName.MNL2, ModelName.ML2, ModelName.ML4, ModelName.ML6}
LINEAR_MODELS = {ModelName.MNL1, ModelName.MNL2, ModelName.MNL1_LOW, ModelName.MNL1_HIGH, ModelName.ML1, ModelName.ML2}
TAU_MODELS = {ModelName.ML3, ModelName.ML4}
EXPONENTIAL_MODELS = {ModelName.ML5, ModelName.ML6}


class TimeTransform(BaseModel):
    """Time transform with its shape parameter (tau for Box-Cox/power, beta_T for exponential)."""

    model_config = ConfigDict(frozen=True)

    kind: TransformKind = Field(default=TransformKind.LINEAR, description="Transform family")
    tau: Optional[float] = Field(None, description="Box-Cox / power exponent (dimensionless)")
    beta_T: Optional[float] = Field(None, description="Exponential rate (1/days)")

    @model_validator(mode="after")
    def check_shape_parameter(self) -> "TimeTransform":
        if self.beta_T is not None and not math.isfinite(self.beta_T):
            raise ValueError("beta_T must be finite")
        if self.tau is not None and not math.isfinite(self.tau):
            raise ValueError("tau must be finite")
        return self

    @property
    def needs_positive_time(self) -> bool:
        return self.kind in (TransformKind.BOXCOX, TransformKind.POWER)


class UtilitySpec(BaseModel):
    """One utility specification: which parameters exist and how time enters utility."""

    model_config = ConfigDict(frozen=True)

    name: ModelName = Field(..., description="Model identifier")
    has_children_interaction: bool = Field(..., description="Whether delta_CHT * CH shifts the time coefficient")
    has_panel_effect: bool = Field(..., description="Whether a respondent-level normal error enters the purchase utility")
    transform: TimeTransform = Field(default_factory=TimeTransform, description="Time transform family")
    random_time_coefficient: bool = Field(
        False, description="Random deviation on beta_t; supported by welfare averaging only, never estimated"
    )

    @model_validator(mode="after")
    def check_family(self) -> "UtilitySpec":
        if self.has_panel_effect != self.name.is_mixed:
            raise ValueError(f"{self.name.value}: panel effect must be {'present' if self.name.is_mixed else 'absent'}")
        if self.has_children_interaction != (self.name in CHILDREN_MODELS):
            raise ValueError(f"{self.name.value}: children interaction flag does not match the model family")
        kind = self.transform.kind
        if self.name in LINEAR_MODELS and kind != TransformKind.LINEAR:
            raise ValueError(f"{self.name.value} uses a linear time transform")
        if self.name in TAU_MODELS and kind not in (TransformKind.BOXCOX, TransformKind.POWER):
            raise ValueError(f"{self.name.value} uses a Box-Cox or power time transform")
        if self.name in EXPONENTIAL_MODELS and kind != TransformKind.EXPONENTIAL:
            raise ValueError(f"{self.name.value} uses an exponential time transform")
        return self

    def parameter_names(self) -> List[str]:
        """Free parameters in optimizer order."""
        names = ["asc", "beta_c", "beta_t"]
        if self.has_children_interaction:
            names.append("delta_cht")
        if self.transform.kind in (TransformKind.BOXCOX, TransformKind.POWER):
            names.append("tau")
        if self.transform.kind == TransformKind.EXPONENTIAL:
            names.append("beta_T")
        if self.has_panel_effect:
            names.append("sigma_xi")
        if self.random_time_coefficient:
            names.append("sigma_t")
        return names

    @property
    def n_parameters(self) -> int:
        return len(self.parameter_names())

    def with_transform(self, kind: TransformKind) -> "UtilitySpec":
        """Copy with another transform kind, validated against the family rules."""
        return UtilitySpec(
            name=self.name,
            has_children_interaction=self.has_children_interaction,
            has_panel_effect=self.has_panel_effect,
            transform=TimeTransform(kind=kind),
            random_time_coefficient=self.random_time_coefficient,
        )


OPTIONAL_PARAMETERS = ("delta_cht", "tau", "beta_T", "sigma_xi", "sigma_t")


class ParameterVector(BaseModel):
    """Utility coefficients; optional entries are present exactly when the model uses them."""

    model_config = ConfigDict(frozen=True)

    asc: float = Field(0.0, description="Alternative-specific constant of the purchase alternative")
    beta_c: float = Field(0.0, description="Cost coefficient (1/dollars of monthly bill)")
    beta_t: float = Field(0.0, description="Deprivation time coefficient (1/transformed-time unit)")
    delta_cht: Optional[float] = Field(None, description="Children-time interaction")
    tau: Optional[float] = Field(None, description="Box-Cox / power exponent")
    beta_T: Optional[float] = Field(None, description="Exponential time rate (1/days)")
    sigma_xi: Optional[float] = Field(None, ge=0.0, description="Standard deviation of the panel effect")
    sigma_t: Optional[float] = Field(None, ge=0.0, description="Standard deviation of a random beta_t (welfare only)")

    def check_against(self, spec: UtilitySpec) -> None:
        """Raise ParameterMismatchError unless exactly the model's parameters are present."""
        names = set(spec.parameter_names())
        missing = [n for n in OPTIONAL_PARAMETERS if n in names and getattr(self, n) is None]
        extra = [n for n in OPTIONAL_PARAMETERS if n not in names and getattr(self, n) is not None]
        if missing or extra:
            raise ParameterMismatchError(
                f"Parameters do not match {spec.name.value}: missing={missing or 'none'}, unexpected={extra or 'none'}"
            )

    def to_array(self, spec: UtilitySpec) -> np.ndarray:
        self.check_against(spec)
        return np.array([getattr(self, n) for n in spec.parameter_names()], dtype=float)

    def as_dict(self, spec: UtilitySpec) -> Dict[str, float]:
        self.check_against(spec)
        return {n: float(getattr(self, n)) for n in spec.parameter_names()}

    @classmethod
    def from_array(cls, spec: UtilitySpec, values: Sequence[float]) -> "ParameterVector":
        """Build from optimizer order. Standard deviations enter utility through their absolute value."""
        names = spec.parameter_names()
        if len(values) != len(names):
            raise ParameterMismatchError(f"{spec.name.value} expects {len(names)} parameters, got {len(values)}")
        fields = {n: float(v) for n, v in zip(names, values)}
        for sd in ("sigma_xi", "sigma_t"):
            if sd in fields:
                fields[sd] = abs(fields[sd])
        return cls(**fields)

    @classmethod
    def default_start(cls, spec: UtilitySpec) -> "ParameterVector":
        start = {n: 0.0 for n in spec.parameter_names()}
        if "tau" in start:
            start["tau"] = 1.0
        if "beta_T" in start:
            start["beta_T"] = 0.01
        if "sigma_xi" in start:
            start["sigma_xi"] = 0.5
        return cls(**start)

    def time_transform(self, spec: UtilitySpec) -> TimeTransform:
        return TimeTransform(kind=spec.transform.kind, tau=self.tau, beta_T=self.beta_T)

    def time_coefficient(self, ch: float = 0.0) -> float:
        """beta_t + delta_CHT * CH."""
        return self.beta_t + (self.delta_cht or 0.0) * ch
