"""Binary logit and simulated panel (mixed logit) log-likelihoods with analytic gradients."""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Literal, Optional, Tuple

import numpy as np
from scipy.special import expit, logsumexp
from src.exceptions import DrawConfigError, EstimationException, NonFiniteObjectiveError, SpecificationException
from src.schemas.dataset.models import ChoiceDataset
from src.schemas.estimate.models import DrawConfig
from src.schemas.spec.models import ParameterVector, TimeTransform, TransformKind, UtilitySpec
from src.services.spec.transforms import transform_shape_derivative, transform_time

from .arrays import ChoiceArrays
from .draws import make_normal_draws

logger = logging.getLogger(__name__)

Contributions = Tuple[np.ndarray, Optional[np.ndarray]]


def logit_probability(v_purchase: float, v_wait: float) -> float:
    """Binary logit probability of purchase; saturates to 0 or 1 without overflow."""
    return float(expit(v_purchase - v_wait))


def _evaluate(
    spec: UtilitySpec,
    theta: np.ndarray,
    arrays: ChoiceArrays,
    normal_draws: Optional[np.ndarray],
    with_gradient: bool,
) -> Contributions:
    """Per-respondent log-likelihood and, optionally, per-respondent gradient rows."""
    names = spec.parameter_names()
    p = {name: float(value) for name, value in zip(names, theta)}
    transform = TimeTransform.model_construct(kind=spec.transform.kind, tau=p.get("tau"), beta_T=p.get("beta_T"))
    edt = arrays.dt_days + arrays.wt_days

    with np.errstate(over="ignore", invalid="ignore"):
        gap = transform_time(arrays.dt_days, transform, check_domain=False) - transform_time(edt, transform, check_domain=False)
        ch = arrays.ch if spec.has_children_interaction else 0.0
        b = p["beta_t"] + p.get("delta_cht", 0.0) * ch
        v = p["asc"] + p["beta_c"] * arrays.cost_final + b * gap
        sign = 2.0 * arrays.chosen - 1.0

        if spec.has_panel_effect:
            z = normal_draws[arrays.respondent_index]  # type: ignore[index]
            v_draws = v[:, None] + p["sigma_xi"] * z
            log_lr = np.add.reduceat(-np.logaddexp(0.0, -sign[:, None] * v_draws), arrays.starts, axis=0)
            log_total = logsumexp(log_lr, axis=1)
            ll = log_total - np.log(z.shape[1])
        else:
            ll = np.add.reduceat(-np.logaddexp(0.0, -sign * v), arrays.starts)

        if not with_gradient:
            return ll, None

        columns = {"asc": np.ones_like(v), "beta_c": arrays.cost_final, "beta_t": gap}
        if spec.has_children_interaction:
            columns["delta_cht"] = arrays.ch * gap
        if spec.transform.kind != TransformKind.LINEAR:
            shape_gap = transform_shape_derivative(arrays.dt_days, transform, check_domain=False) - transform_shape_derivative(
                edt, transform, check_domain=False
            )
            columns["beta_T" if spec.transform.kind == TransformKind.EXPONENTIAL else "tau"] = b * shape_gap

        if spec.has_panel_effect:
            # posterior weight of each draw given the respondent's answers
            weights = np.exp(log_lr - log_total[:, None])
            residual = (arrays.chosen[:, None] - expit(v_draws)) * weights[arrays.respondent_index]
            effective = residual.sum(axis=1)
            columns["sigma_xi"] = (residual * z).sum(axis=1)
            rows = np.column_stack([columns[n] if n == "sigma_xi" else effective * columns[n] for n in names])
        else:
            residual = arrays.chosen - expit(v)
            rows = residual[:, None] * np.column_stack([columns[n] for n in names])
        return ll, np.add.reduceat(rows, arrays.starts, axis=0)


class LogLikelihood:
    """Log-likelihood of one spec on one dataset, evaluated on raw parameter arrays (spec order).

    Per-respondent contributions are concatenated in respondent-id order before
    summation, so totals do not depend on ``n_workers``.
    """

    def __init__(
        self,
        spec: UtilitySpec,
        arrays: ChoiceArrays,
        normal_draws: Optional[np.ndarray] = None,
        n_workers: int = 1,
    ):
        if spec.random_time_coefficient:
            raise SpecificationException(f"{spec.name.value}: a random time coefficient is not estimable")
        if spec.has_panel_effect:
            if normal_draws is None:
                raise DrawConfigError(f"{spec.name.value} needs panel-effect draws")
            normal_draws = np.asarray(normal_draws, dtype=float)
            if normal_draws.ndim != 2 or normal_draws.shape[0] != arrays.n_respondents or normal_draws.shape[1] < 1:
                raise DrawConfigError(
                    f"Draws must have shape ({arrays.n_respondents}, R >= 1), got {getattr(normal_draws, 'shape', None)}"
                )

        self.spec = spec
        self.arrays = arrays
        self.normal_draws = normal_draws if spec.has_panel_effect else None
        self.n_workers = max(1, n_workers)
        self._chunks = self._make_chunks()

    @property
    def parameter_names(self) -> List[str]:
        return self.spec.parameter_names()

    def _make_chunks(self) -> List[Tuple[ChoiceArrays, Optional[np.ndarray]]]:
        n = self.arrays.n_respondents
        n_chunks = min(self.n_workers, n)
        if n_chunks <= 1:
            return [(self.arrays, self.normal_draws)]
        bounds = np.linspace(0, n, n_chunks + 1).astype(int)
        return [
            (self.arrays.chunk(lo, hi), None if self.normal_draws is None else self.normal_draws[lo:hi])
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if hi > lo
        ]

    def contributions(self, theta: np.ndarray, with_gradient: bool = True) -> Contributions:
        theta = np.asarray(theta, dtype=float)
        if len(self._chunks) == 1:
            arrays, draws = self._chunks[0]
            return _evaluate(self.spec, theta, arrays, draws, with_gradient)

        with ThreadPoolExecutor(max_workers=self.n_workers) as pool:
            parts = list(pool.map(lambda chunk: _evaluate(self.spec, theta, chunk[0], chunk[1], with_gradient), self._chunks))
        ll = np.concatenate([part[0] for part in parts])
        grad = np.concatenate([part[1] for part in parts], axis=0) if with_gradient else None  # type: ignore[misc]
        return ll, grad

    def value(self, theta: np.ndarray) -> float:
        ll, _ = self.contributions(theta, with_gradient=False)
        return float(np.sum(ll))

    def value_and_gradient(self, theta: np.ndarray) -> Tuple[float, np.ndarray]:
        ll, grad = self.contributions(theta, with_gradient=True)
        return float(np.sum(ll)), np.sum(grad, axis=0)  # type: ignore[arg-type]

    def numerical_gradient(self, theta: np.ndarray, step: float = 1e-6) -> np.ndarray:
        """Central differences with step ``step * max(1, |theta_j|)``.

        :raises NonFiniteObjectiveError: When any stencil point has a non-finite objective
        """
        theta = np.asarray(theta, dtype=float)
        result = np.empty_like(theta)
        for j in range(theta.size):
            h = step * max(1.0, abs(theta[j]))
            forward, backward = theta.copy(), theta.copy()
            forward[j] += h
            backward[j] -= h
            upper, lower = self.value(forward), self.value(backward)
            if not (np.isfinite(upper) and np.isfinite(lower)):
                name = self.parameter_names[j]
                logger.error(f"Non-finite log-likelihood in the difference stencil of {name}")
                raise NonFiniteObjectiveError(f"Non-finite log-likelihood in the difference stencil of {name}")
            result[j] = (upper - lower) / (2.0 * h)
        return result


def build_log_likelihood(
    spec: UtilitySpec,
    data: ChoiceDataset,
    draws: Optional[DrawConfig] = None,
    normal_draws: Optional[np.ndarray] = None,
    n_workers: int = 1,
) -> LogLikelihood:
    """Assemble arrays and, for panel specs, the respondents' normal draws."""
    arrays = ChoiceArrays.from_dataset(data, require_children_flag=spec.has_children_interaction)
    if spec.has_panel_effect and normal_draws is None:
        normal_draws = make_normal_draws(arrays.n_respondents, draws or DrawConfig())
    return LogLikelihood(spec, arrays, normal_draws=normal_draws, n_workers=n_workers)


def loglik_mnl(spec: UtilitySpec, params: ParameterVector, data: ChoiceDataset) -> float:
    """Sum over answered observations of ln P(chosen alternative).

    :raises EstimationException: When ``spec`` carries a panel effect
    :raises ParameterMismatchError: When ``params`` does not match ``spec``
    :raises EmptyDatasetError: When there is nothing to evaluate
    """
    if spec.has_panel_effect:
        raise EstimationException(f"{spec.name.value} has a panel effect; use simulated_loglik")
    theta = params.to_array(spec)
    return build_log_likelihood(spec, data).value(theta)


def simulated_loglik(
    spec: UtilitySpec,
    params: ParameterVector,
    data: ChoiceDataset,
    draws: DrawConfig,
    normal_draws: Optional[np.ndarray] = None,
) -> float:
    """Sum over respondents of ln of the draw-averaged product of their choice probabilities.

    :param normal_draws: Explicit (respondents, R) standard-normal draws replacing those built from ``draws``
    :raises EstimationException: When ``spec`` has no panel effect
    """
    if not spec.has_panel_effect:
        raise EstimationException(f"{spec.name.value} has no panel effect; use loglik_mnl")
    theta = params.to_array(spec)
    return build_log_likelihood(spec, data, draws=draws, normal_draws=normal_draws).value(theta)


def gradient(
    spec: UtilitySpec,
    params: ParameterVector,
    data: ChoiceDataset,
    draws: Optional[DrawConfig] = None,
    method: Literal["analytic", "numerical"] = "analytic",
    normal_draws: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Gradient of the (simulated) log-likelihood in ``spec.parameter_names()`` order."""
    objective = build_log_likelihood(spec, data, draws=draws, normal_draws=normal_draws)
    theta = params.to_array(spec)
    if method == "numerical":
        return objective.numerical_gradient(theta)

    value, grad = objective.value_and_gradient(theta)
    if not np.isfinite(value) or not np.all(np.isfinite(grad)):
        logger.error(f"Non-finite log-likelihood or gradient for {spec.name.value}")
        raise NonFiniteObjectiveError(f"Non-finite log-likelihood or gradient for {spec.name.value}")
    return grad
