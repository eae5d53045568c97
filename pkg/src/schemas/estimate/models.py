from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator
from src.schemas.spec.models import ModelName, ParameterVector, TransformKind


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


class DrawGenerator(str, Enum):
    HALTON = "halton"
    PSEUDO_RANDOM = "pseudo_random"


class DrawConfig(BaseModel):
    """Simulation draws for the panel-effect integral."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_draws: int = Field(500, ge=1, description="Draws per respondent (R)")
    generator: DrawGenerator = Field(DrawGenerator.HALTON, description="Quasi-random or pseudo-random uniforms")
    base: int = Field(2, description="Halton base (prime)")
    skip: int = Field(50, ge=0, description="Leading Halton elements discarded")
    scramble: bool = Field(True, description="Apply a seeded random shift modulo 1 to the Halton stream")
    seed: int = Field(20240901, description="Seed for pseudo-random draws and the Halton shift")

    @field_validator("base")
    @classmethod
    def validate_base(cls, v: int) -> int:
        if not is_prime(v):
            raise ValueError(f"Halton base must be prime, got {v}")
        return v


class OptimizerOptions(BaseModel):
    """Quasi-Newton ascent and inference settings."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    gradient_tolerance: float = Field(1e-5, gt=0, description="Convergence threshold on the gradient max-norm")
    max_iterations: int = Field(500, ge=0, description="Quasi-Newton iteration budget")
    newton_polish_steps: int = Field(5, ge=0, description="Newton steps on the numerical Hessian after BFGS")
    hessian_step: float = Field(1e-5, gt=0, description="Relative step of the central-difference Hessian")
    n_workers: int = Field(1, ge=1, description="Threads used for respondent-parallel likelihood evaluation")


class EstimationResult(BaseModel):
    """Point estimates, inference and fit statistics of one fitted model."""

    spec_name: ModelName = Field(..., description="Model identifier")
    transform: TransformKind = Field(..., description="Time transform used")
    estimates: ParameterVector = Field(..., description="Estimated parameters")
    std_errors: Dict[str, Optional[float]] = Field(..., description="Standard errors; None when the Hessian is not invertible")
    t_stats: Dict[str, Optional[float]] = Field(..., description="estimate / std_error")
    p_values: Dict[str, Optional[float]] = Field(..., description="Two-sided normal p-values")
    ll_final: float = Field(..., description="Log-likelihood at the estimates")
    ll_null: float = Field(..., description="Equal-shares log-likelihood N ln 0.5")
    adj_rho_sq: float = Field(..., description="1 - (ll_final - k) / ll_null")
    k: int = Field(..., description="Number of free parameters")
    n_obs: int = Field(..., description="Observations used")
    n_respondents: int = Field(..., description="Respondents used")
    converged: bool = Field(..., description="Gradient max-norm within tolerance")
    gradient_norm: float = Field(..., description="Gradient max-norm at the estimates")
    iterations: int = Field(..., description="Quasi-Newton iterations plus accepted Newton steps")
    diagnostics: List[str] = Field(default_factory=list, description="Warnings raised during estimation")
    draws: Optional[DrawConfig] = Field(None, description="Draw configuration for simulated likelihoods")
