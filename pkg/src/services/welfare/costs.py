"""Marginal value of deprivation time and deprivation cost functions."""

import logging
from typing import Optional

import numpy as np
from src.exceptions import InvalidIntervalError, SpecificationException, UndefinedMarginalUtilityError
from src.schemas.estimate.models import DrawConfig
from src.schemas.spec.models import ParameterVector, TimeTransform, TransformKind, UtilitySpec
from src.schemas.welfare.models import DCFConfig, DCFCurve, IntegrationMethod
from src.services.estimate.draws import make_normal_draws
from src.services.spec.transforms import TimeLike, transform_time, transform_time_derivative

from .quadrature import integrate_adaptive_simpson

logger = logging.getLogger(__name__)

_TAU_KINDS = (TransformKind.BOXCOX, TransformKind.POWER)


def welfare_spec(spec: UtilitySpec, transform_variant: Optional[TransformKind]) -> UtilitySpec:
    """``spec`` with the Box-Cox / power variant applied; other families ignore the variant."""
    if transform_variant is None or spec.transform.kind not in _TAU_KINDS or transform_variant == spec.transform.kind:
        return spec
    try:
        return spec.with_transform(transform_variant)
    except ValueError as e:
        raise SpecificationException(str(e))


def _time_coefficient(spec: UtilitySpec, params: ParameterVector, ch: int) -> float:
    return params.time_coefficient(ch if spec.has_children_interaction else 0)


def _check_cost_coefficient(params: ParameterVector) -> None:
    if params.beta_c == 0:
        logger.error("Cost coefficient is zero; money-metric welfare is undefined")
        raise UndefinedMarginalUtilityError("Cost coefficient is zero; money-metric welfare is undefined")


def mvdt(
    spec: UtilitySpec,
    params: ParameterVector,
    t: TimeLike,
    ch: int = 0,
    transform_variant: Optional[TransformKind] = None,
) -> TimeLike:
    """Marginal value of deprivation time, (beta_t + delta_CHT ch) f'(t) / (-beta_c).

    Signed: negative when time is a disutility. Dollars of monthly bill per day.

    :raises UndefinedMarginalUtilityError: When beta_c is zero
    :raises TimeDomainError: When ``t`` lies outside the transform domain
    """
    spec = welfare_spec(spec, transform_variant)
    params.check_against(spec)
    _check_cost_coefficient(params)
    derivative = transform_time_derivative(t, params.time_transform(spec))
    return _time_coefficient(spec, params, ch) * derivative / (-params.beta_c)


def _interval_cost(
    time_coefficient: float,
    beta_c: float,
    transform: TimeTransform,
    t_from: float,
    t_to: float,
    config: DCFConfig,
) -> float:
    """Integral of -MVDT over [t_from, t_to] in monthly-bill dollars."""
    if config.method == IntegrationMethod.CLOSED_FORM:
        antiderivative = transform_time(np.array([t_from, t_to]), transform, check_domain=False)
        return time_coefficient / beta_c * float(antiderivative[1] - antiderivative[0])

    def integrand(t: float) -> float:
        value = time_coefficient * transform_time_derivative(t, transform, check_domain=False) / beta_c
        if not np.isfinite(value):
            raise InvalidIntervalError(f"Marginal cost is not finite at t={t}; integrate this interval in closed form")
        return float(value)

    value, _ = integrate_adaptive_simpson(integrand, t_from, t_to, tol=config.quadrature_tolerance / 10.0)
    return value


def _check_interval(spec: UtilitySpec, params: ParameterVector, t_from: float, t_to: float) -> None:
    if t_from < 0 or t_to < t_from:
        logger.error(f"Invalid deprivation interval [{t_from}, {t_to}]")
        raise InvalidIntervalError(f"Interval must satisfy 0 <= t_from <= t_to, got [{t_from}, {t_to}]")
    if t_from == 0 and spec.transform.needs_positive_time and (params.tau is None or params.tau <= 0):
        raise InvalidIntervalError(f"{spec.transform.kind.value} costs from t=0 require tau > 0, got {params.tau}")


def deprivation_cost(
    spec: UtilitySpec,
    params: ParameterVector,
    t_from: float,
    t_to: float,
    config: DCFConfig,
) -> float:
    """Deprivation cost of going from ``t_from`` to ``t_to`` days, in ``config.unit`` dollars.

    Positive when deprivation time is a disutility.

    :raises InvalidIntervalError: For inverted or negative intervals and tau <= 0 from t = 0
    :raises UndefinedMarginalUtilityError: When beta_c is zero
    """
    spec = welfare_spec(spec, config.transform_variant)
    params.check_against(spec)
    _check_cost_coefficient(params)
    _check_interval(spec, params, t_from, t_to)
    if t_from == t_to:
        return 0.0

    coefficient = _time_coefficient(spec, params, config.ch)
    cost = _interval_cost(coefficient, params.beta_c, params.time_transform(spec), t_from, t_to, config)
    return cost * config.unit.multiplier


def deprivation_cost_averaged(
    spec: UtilitySpec,
    params: ParameterVector,
    t_from: float,
    t_to: float,
    config: DCFConfig,
    draws: DrawConfig,
) -> float:
    """Deprivation cost averaged over draws of the random components that enter the marginal value of time.

    The panel effect never enters it, so only a random time coefficient
    (``sigma_t`` > 0) makes this differ from :func:`deprivation_cost`.
    """
    if not spec.random_time_coefficient or not params.sigma_t:
        return deprivation_cost(spec, params, t_from, t_to, config)

    spec = welfare_spec(spec, config.transform_variant)
    params.check_against(spec)
    _check_cost_coefficient(params)
    _check_interval(spec, params, t_from, t_to)
    if t_from == t_to:
        return 0.0

    transform = params.time_transform(spec)
    coefficients = _time_coefficient(spec, params, config.ch) + params.sigma_t * make_normal_draws(1, draws)[0]
    costs = [_interval_cost(float(b), params.beta_c, transform, t_from, t_to, config) for b in coefficients]
    return float(np.mean(costs)) * config.unit.multiplier


def dcf_curve(spec: UtilitySpec, params: ParameterVector, config: DCFConfig) -> DCFCurve:
    """Deprivation cost from day 0 to each grid point."""
    used = welfare_spec(spec, config.transform_variant)
    costs = [deprivation_cost(spec, params, 0.0, float(t), config) for t in config.time_grid]
    logger.info(f"{spec.name.value} DCF({config.time_grid[-1]} days) = {costs[-1]:.2f} ({config.unit.value})")
    return DCFCurve(
        times=list(config.time_grid),
        costs=costs,
        spec_name=spec.name,
        transform=used.transform.kind,
        params_used=params,
        unit=config.unit,
        ch=config.ch,
    )
