"""Uniform and standard-normal draws for the simulated panel likelihood."""

import logging

import numpy as np
from scipy.stats import norm
from src.exceptions import DrawConfigError
from src.schemas.estimate.models import DrawConfig, DrawGenerator, is_prime

logger = logging.getLogger(__name__)

# keeps norm.ppf finite
_UNIT_EPS = np.finfo(float).eps


def halton_sequence(count: int, base: int = 2, skip: int = 0) -> np.ndarray:
    """Radical-inverse sequence of ``base`` after discarding the first ``skip`` elements.

    Indices start at 1, so every value lies strictly inside (0, 1).

    :raises DrawConfigError: For a composite base, ``count < 1`` or ``skip < 0``
    """
    if not is_prime(base):
        raise DrawConfigError(f"Halton base must be prime, got {base}")
    if count < 1:
        raise DrawConfigError(f"count must be at least 1, got {count}")
    if skip < 0:
        raise DrawConfigError(f"skip must be non-negative, got {skip}")

    index = np.arange(skip + 1, skip + count + 1, dtype=np.int64)
    values = np.zeros(count, dtype=float)
    fraction = 1.0 / base
    while np.any(index > 0):
        index, digit = np.divmod(index, base)
        values += fraction * digit
        fraction /= base
    return values


def make_uniform_draws(n_respondents: int, config: DrawConfig) -> np.ndarray:
    """(n_respondents, n_draws) uniforms; respondent n takes the n-th consecutive block of one stream."""
    if n_respondents < 1:
        raise DrawConfigError(f"n_respondents must be at least 1, got {n_respondents}")

    total = n_respondents * config.n_draws
    rng = np.random.default_rng(config.seed)
    if config.generator == DrawGenerator.HALTON:
        uniforms = halton_sequence(total, base=config.base, skip=config.skip)
        if config.scramble:
            uniforms = np.mod(uniforms + rng.random(), 1.0)
    else:
        uniforms = rng.random(total)
    uniforms = np.clip(uniforms, _UNIT_EPS, 1.0 - _UNIT_EPS)
    return uniforms.reshape(n_respondents, config.n_draws)


def make_normal_draws(n_respondents: int, config: DrawConfig) -> np.ndarray:
    """Standard-normal draws per respondent, shape (n_respondents, n_draws)."""
    draws = norm.ppf(make_uniform_draws(n_respondents, config))
    logger.debug(f"Generated {draws.shape} {config.generator.value} normal draws")
    return draws
