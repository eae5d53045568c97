from .arrays import ChoiceArrays
from .draws import halton_sequence, make_normal_draws, make_uniform_draws
from .estimator import ChoiceModelEstimator, fit
from .factory import make_estimator
from .likelihood import LogLikelihood, build_log_likelihood, gradient, logit_probability, loglik_mnl, simulated_loglik
from .statistics import adjusted_rho_square, equal_shares_loglik

__all__ = [
    "ChoiceArrays",
    "ChoiceModelEstimator",
    "LogLikelihood",
    "adjusted_rho_square",
    "build_log_likelihood",
    "equal_shares_loglik",
    "fit",
    "gradient",
    "halton_sequence",
    "logit_probability",
    "loglik_mnl",
    "make_estimator",
    "make_normal_draws",
    "make_uniform_draws",
    "simulated_loglik",
]
