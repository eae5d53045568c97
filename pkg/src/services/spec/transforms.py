"""Deprivation-time transforms and their derivatives.

All functions accept a scalar or a numpy array and return the same shape
(a Python float for scalar input).
"""

from typing import Union

import numpy as np
from src.exceptions import ParameterMismatchError, TimeDomainError
from src.schemas.spec.models import TimeTransform, TransformKind

# |tau| below this switches Box-Cox to its log limit
BOXCOX_LOG_TOLERANCE = 1e-8
# below this the tau-derivative of Box-Cox uses its Taylor series
_BOXCOX_SERIES_TOLERANCE = 1e-4

TimeLike = Union[float, np.ndarray]


def _prepare(t: TimeLike, transform: TimeTransform, check_domain: bool) -> np.ndarray:
    values = np.asarray(t, dtype=float)
    if check_domain:
        if transform.needs_positive_time and np.any(values <= 0):
            raise TimeDomainError(f"{transform.kind.value} transform requires t > 0")
        if np.any(values < 0):
            raise TimeDomainError("deprivation time must be non-negative")
    return values


def _shape(transform: TimeTransform) -> float:
    if transform.kind in (TransformKind.BOXCOX, TransformKind.POWER):
        if transform.tau is None:
            raise ParameterMismatchError(f"{transform.kind.value} transform requires tau")
        return transform.tau
    if transform.kind == TransformKind.EXPONENTIAL:
        if transform.beta_T is None:
            raise ParameterMismatchError("exponential transform requires beta_T")
        return transform.beta_T
    return 0.0


def _out(values: np.ndarray, like: TimeLike) -> TimeLike:
    return float(values) if np.ndim(like) == 0 else values


def transform_time(t: TimeLike, transform: TimeTransform, check_domain: bool = True) -> TimeLike:
    """Linear t, Box-Cox (t^tau - 1)/tau (ln t at tau = 0), power t^tau, exponential e^(beta_T t)."""
    x = _prepare(t, transform, check_domain)
    shape = _shape(transform)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if transform.kind == TransformKind.LINEAR:
            result = x.copy()
        elif transform.kind == TransformKind.BOXCOX:
            if abs(shape) < BOXCOX_LOG_TOLERANCE:
                result = np.log(x)
            else:
                # expm1 keeps (t^tau - 1)/tau accurate for small tau
                result = np.where(x > 0, np.expm1(shape * np.log(np.where(x > 0, x, 1.0))) / shape, -1.0 / shape)
        elif transform.kind == TransformKind.POWER:
            result = np.power(x, shape)
        else:
            result = np.exp(shape * x)
    return _out(result, t)


def transform_time_derivative(t: TimeLike, transform: TimeTransform, check_domain: bool = True) -> TimeLike:
    """d f(t) / dt."""
    x = _prepare(t, transform, check_domain)
    shape = _shape(transform)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if transform.kind == TransformKind.LINEAR:
            result = np.ones_like(x)
        elif transform.kind == TransformKind.BOXCOX:
            result = np.power(x, shape - 1.0)
        elif transform.kind == TransformKind.POWER:
            result = shape * np.power(x, shape - 1.0)
        else:
            result = shape * np.exp(shape * x)
    return _out(result, t)


def transform_shape_derivative(t: TimeLike, transform: TimeTransform, check_domain: bool = True) -> TimeLike:
    """d f(t) / d(tau) for Box-Cox/power, d f(t) / d(beta_T) for exponential, zero for linear."""
    x = _prepare(t, transform, check_domain)
    shape = _shape(transform)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        if transform.kind == TransformKind.LINEAR:
            result = np.zeros_like(x)
        elif transform.kind == TransformKind.BOXCOX:
            log_t = np.log(x)
            if abs(shape) < _BOXCOX_SERIES_TOLERANCE:
                result = log_t**2 / 2.0 + shape * log_t**3 / 6.0 + shape**2 * log_t**4 / 24.0
            else:
                t_tau = np.exp(shape * log_t)
                result = (shape * t_tau * log_t - np.expm1(shape * log_t)) / shape**2
        elif transform.kind == TransformKind.POWER:
            result = np.power(x, shape) * np.log(x)
        else:
            result = x * np.exp(shape * x)
    return _out(result, t)
