import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.optimize import OptimizeResult, minimize
from src.exceptions import EstimationException, NonFiniteObjectiveError, SpecificationException
from src.schemas.dataset.models import ChoiceDataset
from src.schemas.estimate.models import DrawConfig, EstimationResult, OptimizerOptions
from src.schemas.spec.models import ParameterVector, UtilitySpec

from .arrays import ChoiceArrays
from .draws import make_normal_draws
from .likelihood import LogLikelihood
from .statistics import (
    adjusted_rho_square,
    central_difference_hessian,
    cov_hessian,
    equal_shares_loglik,
    se_from_cov,
    two_sided_p_value,
)

logger = logging.getLogger(__name__)

# final LL within this many nats per observation of zero suggests separation
_SEPARATION_LL_PER_OBS = 1e-3


class ChoiceModelEstimator:
    """Maximum (simulated) likelihood estimation: BFGS ascent, Newton polish, inverse-Hessian inference."""

    def __init__(self, draws: DrawConfig, options: OptimizerOptions):
        self.draws = draws
        self.options = options

    def fit(
        self,
        spec: UtilitySpec,
        data: ChoiceDataset,
        start: Optional[ParameterVector] = None,
        draws: Optional[DrawConfig] = None,
    ) -> EstimationResult:
        """Fit ``spec`` to ``data``.

        Non-convergence is reported through ``converged`` and ``diagnostics``, never raised.

        :param start: Starting values; the model's defaults when omitted
        :param draws: Overrides the estimator's draw configuration
        :raises SpecificationException: For specs with a random time coefficient
        :raises EmptyDatasetError: When no answered observation is usable
        :raises NonFiniteObjectiveError: When the log-likelihood is not finite at the start
        """
        if spec.random_time_coefficient:
            raise SpecificationException(f"{spec.name.value}: a random time coefficient is not estimable")
        draws = draws or self.draws
        arrays = ChoiceArrays.from_dataset(data, require_children_flag=spec.has_children_interaction)
        normal_draws = make_normal_draws(arrays.n_respondents, draws) if spec.has_panel_effect else None
        objective = LogLikelihood(spec, arrays, normal_draws=normal_draws, n_workers=self.options.n_workers)

        start = start or ParameterVector.default_start(spec)
        theta0 = start.to_array(spec)
        ll0 = objective.value(theta0) if np.all(np.isfinite(theta0)) else np.nan
        if not np.isfinite(ll0):
            logger.error(f"{spec.name.value}: log-likelihood is not finite at the starting values")
            raise NonFiniteObjectiveError(f"{spec.name.value}: log-likelihood is not finite at the starting values")

        logger.info(f"Fitting {spec.name.value} on {arrays.n_obs} observations / {arrays.n_respondents} respondents")
        scale = self._scales(spec, arrays)
        theta, iterations, message = self._ascend(objective, theta0, scale)

        names = spec.parameter_names()
        if "sigma_xi" in names and theta[names.index("sigma_xi")] < 0:
            # draws need not be symmetric, so continue from the reported sign
            theta[names.index("sigma_xi")] *= -1.0
            theta, extra, message = self._ascend(objective, theta, scale)
            iterations += extra

        theta, polished = self._newton_polish(objective, theta, scale)
        return self._result(spec, objective, theta, scale, iterations + polished, message, draws)

    @staticmethod
    def _scales(spec: UtilitySpec, arrays: ChoiceArrays) -> np.ndarray:
        """Typical regressor magnitudes; the optimizer works on theta * scale."""
        typical = {
            "beta_c": max(1.0, float(np.mean(np.abs(arrays.cost_final)))),
            "beta_T": max(1.0, float(np.mean(arrays.dt_days + arrays.wt_days))),
        }
        return np.array([typical.get(name, 1.0) for name in spec.parameter_names()])

    def _ascend(self, objective: LogLikelihood, theta0: np.ndarray, scale: np.ndarray) -> Tuple[np.ndarray, int, str]:
        def negative(u: np.ndarray) -> Tuple[float, np.ndarray]:
            with np.errstate(all="ignore"):
                value, grad = objective.value_and_gradient(u / scale)
            if not np.isfinite(value) or not np.all(np.isfinite(grad)):
                return np.inf, np.zeros_like(u)
            return -value, -grad / scale

        result: OptimizeResult = minimize(
            negative,
            theta0 * scale,
            jac=True,
            method="BFGS",
            options={"gtol": self.options.gradient_tolerance, "maxiter": self.options.max_iterations},
        )
        return result.x / scale, int(result.nit), str(result.message)

    def _hessian(self, objective: LogLikelihood, theta: np.ndarray, scale: np.ndarray) -> np.ndarray:
        return central_difference_hessian(
            lambda point: objective.value_and_gradient(point)[1], theta, step=self.options.hessian_step, scale=scale
        )

    def _newton_polish(self, objective: LogLikelihood, theta: np.ndarray, scale: np.ndarray) -> Tuple[np.ndarray, int]:
        ll, grad = objective.value_and_gradient(theta)
        accepted = 0
        for _ in range(self.options.newton_polish_steps):
            if np.max(np.abs(grad)) <= self.options.gradient_tolerance:
                break
            hessian = self._hessian(objective, theta, scale)
            if cov_hessian(hessian) is None:
                break
            direction = np.linalg.solve(hessian, grad)
            for shrink in (1.0, 0.5, 0.25):
                candidate = theta - shrink * direction
                c_ll, c_grad = objective.value_and_gradient(candidate)
                if np.isfinite(c_ll) and (c_ll > ll or (c_ll >= ll - 1e-9 and np.max(np.abs(c_grad)) < np.max(np.abs(grad)))):
                    theta, ll, grad = candidate, c_ll, c_grad
                    accepted += 1
                    break
            else:
                break
        return theta, accepted

    def _result(
        self,
        spec: UtilitySpec,
        objective: LogLikelihood,
        theta: np.ndarray,
        scale: np.ndarray,
        iterations: int,
        message: str,
        draws: DrawConfig,
    ) -> EstimationResult:
        names = spec.parameter_names()
        ll_final, grad = objective.value_and_gradient(theta)
        if not np.isfinite(ll_final):
            raise NonFiniteObjectiveError(f"{spec.name.value}: log-likelihood is not finite at the estimates")

        gradient_norm = float(np.max(np.abs(grad)))
        converged = gradient_norm <= self.options.gradient_tolerance
        estimates = ParameterVector.from_array(spec, theta)
        reported = estimates.as_dict(spec)
        n_obs = objective.arrays.n_obs
        diagnostics: List[str] = []

        cov = cov_hessian(self._hessian(objective, theta, scale))
        std_errors: Dict[str, Optional[float]] = {name: None for name in names}
        t_stats: Dict[str, Optional[float]] = {name: None for name in names}
        p_values: Dict[str, Optional[float]] = {name: None for name in names}
        if cov is None:
            diagnostics.append("negative Hessian is not positive definite; standard errors unavailable")
        else:
            for name, se in zip(names, se_from_cov(cov)):
                if se > 0 and np.isfinite(se):
                    std_errors[name] = float(se)
                    t_stats[name] = reported[name] / float(se)
                    p_values[name] = two_sided_p_value(t_stats[name])  # type: ignore[arg-type]

        if not converged:
            if iterations >= self.options.max_iterations:
                diagnostics.append(f"iteration budget of {self.options.max_iterations} exhausted")
            diagnostics.append(f"gradient max-norm {gradient_norm:.3g} above tolerance ({message})")
        if ll_final > -_SEPARATION_LL_PER_OBS * n_obs:
            diagnostics.append("log-likelihood near zero; perfect separation suspected")
        for note in diagnostics:
            logger.warning(f"{spec.name.value}: {note}")

        ll_null = equal_shares_loglik(n_obs)
        k = len(names)
        result = EstimationResult(
            spec_name=spec.name,
            transform=spec.transform.kind,
            estimates=estimates,
            std_errors=std_errors,
            t_stats=t_stats,
            p_values=p_values,
            ll_final=ll_final,
            ll_null=ll_null,
            adj_rho_sq=adjusted_rho_square(ll_final, ll_null, k),
            k=k,
            n_obs=n_obs,
            n_respondents=objective.arrays.n_respondents,
            converged=converged,
            gradient_norm=gradient_norm,
            iterations=iterations,
            diagnostics=diagnostics,
            draws=draws if spec.has_panel_effect else None,
        )
        logger.info(f"{spec.name.value}: LL={ll_final:.4f} converged={converged} iterations={iterations}")
        return result


def fit(
    spec: UtilitySpec,
    data: ChoiceDataset,
    draws: Optional[DrawConfig] = None,
    start: Optional[ParameterVector] = None,
    options: Optional[OptimizerOptions] = None,
) -> EstimationResult:
    try:
        return ChoiceModelEstimator(draws or DrawConfig(), options or OptimizerOptions()).fit(spec, data, start=start)
    except (EstimationException, SpecificationException):
        raise
    except np.linalg.LinAlgError as e:
        raise EstimationException(f"{spec.name.value}: linear algebra failure during estimation: {e}")
