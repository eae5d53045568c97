"""Inference and fit statistics for maximum likelihood estimates."""

from typing import Callable, Optional

import numpy as np
from scipy.stats import norm


def adjusted_rho_square(ll_final: float, ll_null: float, k: int) -> float:
    """1 - (ll_final - k) / ll_null."""
    return 1.0 - (ll_final - k) / ll_null


def equal_shares_loglik(n_obs: int) -> float:
    """Log-likelihood of the binary equal-shares model, N ln 0.5."""
    return n_obs * float(np.log(0.5))


def central_difference_hessian(
    gradient: Callable[[np.ndarray], np.ndarray],
    theta: np.ndarray,
    step: float = 1e-5,
    scale: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Symmetrised Hessian from central differences of an analytic gradient.

    :param gradient: Gradient of the log-likelihood at a raw parameter vector
    :param step: Relative step, applied as ``step * max(1, |theta_j * scale_j|) / scale_j``
    :param scale: Typical inverse magnitudes of the parameters; 1 when omitted
    """
    theta = np.asarray(theta, dtype=float)
    scale = np.ones_like(theta) if scale is None else np.asarray(scale, dtype=float)
    k = theta.size
    hessian = np.empty((k, k))
    for j in range(k):
        h = step * max(1.0, abs(theta[j] * scale[j])) / scale[j]
        forward, backward = theta.copy(), theta.copy()
        forward[j] += h
        backward[j] -= h
        hessian[:, j] = (gradient(forward) - gradient(backward)) / (2.0 * h)
    return 0.5 * (hessian + hessian.T)


def cov_hessian(hessian: np.ndarray) -> Optional[np.ndarray]:
    """Inverse of the negative Hessian, or None unless it is positive definite."""
    info_matrix = -1.0 * hessian
    if not np.all(np.isfinite(info_matrix)):
        return None
    try:
        np.linalg.cholesky(info_matrix)
    except np.linalg.LinAlgError:
        return None
    return np.linalg.inv(info_matrix)


def se_from_cov(cov: np.ndarray) -> np.ndarray:
    return np.sqrt(np.diag(cov))


def two_sided_p_value(t_stat: float) -> float:
    return float(2.0 * norm.sf(abs(t_stat)))
