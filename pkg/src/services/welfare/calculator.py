from typing import Optional

from src.schemas.estimate.models import DrawConfig
from src.schemas.spec.models import ParameterVector, UtilitySpec
from src.schemas.welfare.models import DCFConfig, DCFCurve, PolyFit

from .costs import dcf_curve, deprivation_cost_averaged, mvdt
from .polyfit import fit_polynomial


class DeprivationCostCalculator:
    """Welfare measures of a fitted model under one curve configuration."""

    def __init__(self, config: DCFConfig, draws: DrawConfig):
        self.config = config
        self.draws = draws

    def marginal_value(self, spec: UtilitySpec, params: ParameterVector, t: float) -> float:
        return mvdt(spec, params, t, ch=self.config.ch, transform_variant=self.config.transform_variant)

    def cost(self, spec: UtilitySpec, params: ParameterVector, t_from: float, t_to: float) -> float:
        return deprivation_cost_averaged(spec, params, t_from, t_to, self.config, self.draws)

    def curve(self, spec: UtilitySpec, params: ParameterVector, ch: Optional[int] = None) -> DCFCurve:
        config = self.config if ch is None else self.config.model_copy(update={"ch": ch})
        return dcf_curve(spec, params, config)

    @staticmethod
    def fit(curve: DCFCurve, degree: int) -> PolyFit:
        return fit_polynomial(curve, degree)
