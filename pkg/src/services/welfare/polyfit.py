import logging

import numpy as np
from numpy.polynomial import Polynomial
from src.exceptions import WelfareException
from src.schemas.welfare.models import DCFCurve, PolyFit

logger = logging.getLogger(__name__)


def fit_polynomial(curve: DCFCurve, degree: int) -> PolyFit:
    """Least-squares polynomial of ``degree`` through a deprivation cost curve.

    The fit runs on the domain mapped to [-1, 1] and is converted back to
    ascending powers of days.

    :raises WelfareException: When ``degree < 1`` or the grid has no more than ``degree + 1`` points
    """
    x = np.asarray(curve.times, dtype=float)
    y = np.asarray(curve.costs, dtype=float)
    n = x.size
    if degree < 1:
        raise WelfareException(f"Polynomial degree must be at least 1, got {degree}")
    if n <= degree + 1:
        raise WelfareException(f"Fitting degree {degree} needs more than {degree + 1} grid points, got {n}")

    polynomial = Polynomial.fit(x, y, degree).convert()
    coefficients = np.zeros(degree + 1)
    coefficients[: polynomial.coef.size] = polynomial.coef

    residuals = y - polynomial(x)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    rank_deficient = ss_tot == 0.0
    if rank_deficient:
        logger.warning(f"{curve.spec_name.value} curve has no variance; R^2 reported for an exact constant fit")
        r_squared = 1.0 if np.allclose(residuals, 0.0) else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot
    adj_r_squared = 1.0 - (1.0 - r_squared) * (n - 1) / (n - degree - 1)

    return PolyFit(
        degree=degree,
        coefficients=coefficients.tolist(),
        r_squared=r_squared,
        adj_r_squared=adj_r_squared,
        n_points=n,
        rank_deficient=rank_deficient,
        spec_name=curve.spec_name,
        unit=curve.unit,
    )
