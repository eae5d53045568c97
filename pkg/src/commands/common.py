import logging
from typing import Optional

from src.config import RunConfig
from src.exceptions import ParameterMismatchError
from src.schemas.design.models import Design
from src.schemas.spec.models import TAU_MODELS, ModelName, ParameterVector, UtilitySpec
from src.services.design.evaluator import DesignEvaluator
from src.services.design.io import read_design
from src.services.spec.catalog import PUBLISHED_ESTIMATES, get_spec

logger = logging.getLogger(__name__)


def spec_for(config: RunConfig, name: ModelName) -> UtilitySpec:
    """Shipped spec, with the configured transform applied to the tau models only."""
    return get_spec(name, config.transform if name in TAU_MODELS else None)


def design_for(config: RunConfig) -> Design:
    """The configured design file, or the balanced default design."""
    if config.design_path is not None:
        return read_design(config.design_path, config.design.levels)
    logger.info("No design file configured; using the balanced default design")
    return DesignEvaluator(config.design).default_design()


def truth_for(config: RunConfig, spec: UtilitySpec) -> ParameterVector:
    """Configured truth, or the published estimates of the model."""
    truth = config.truth or PUBLISHED_ESTIMATES[spec.name].estimates
    truth.check_against(spec)
    return truth


def start_for(config: RunConfig, spec: UtilitySpec) -> Optional[ParameterVector]:
    """Configured starting values when they fit ``spec``; the model's defaults otherwise."""
    if config.start is None:
        return None
    try:
        config.start.check_against(spec)
    except ParameterMismatchError:
        logger.info(f"Configured start does not match {spec.name.value}; using its default start")
        return None
    return config.start
