import logging
from pathlib import Path
from typing import Iterator, List, Tuple

from src.config import RunConfig
from src.exceptions import ConfigurationError
from src.schemas.estimate.models import EstimationResult
from src.schemas.spec.models import ModelName, ParameterVector, UtilitySpec
from src.schemas.welfare.models import DCFCurve
from src.services.artifacts.writer import ArtifactWriter, read_artifact
from src.services.spec.catalog import PUBLISHED_ESTIMATES, get_spec
from src.services.welfare.calculator import DeprivationCostCalculator
from src.services.welfare.io import write_curve_csv

from .common import spec_for

logger = logging.getLogger(__name__)

PUBLISHED_SOURCE = "published"


def fitted_models(config: RunConfig) -> Iterator[Tuple[UtilitySpec, ParameterVector, str]]:
    """(spec, parameters, source) from estimation artifacts, or the published columns when no inputs are given."""
    if not config.inputs:
        logger.info("No estimation artifacts given; deriving curves from the published estimates")
        for name in config.models:
            yield spec_for(config, name), PUBLISHED_ESTIMATES[name].estimates, PUBLISHED_SOURCE
        return
    for path in config.inputs:
        result = EstimationResult.model_validate(read_artifact(path, "estimate")["result"])
        yield get_spec(result.spec_name, result.transform), result.estimates, Path(path).name


def _degree(config: RunConfig, name: ModelName) -> int:
    return config.polynomial_degrees.get(name, 2)


def dcf(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """Curve CSV plus a JSON artifact (curve and polynomial fit) per fitted model."""
    calculator = DeprivationCostCalculator(config.dcf, config.draws)
    outputs = []
    for spec, params, source in fitted_models(config):
        curve = calculator.curve(spec, params)
        fit = calculator.fit(curve, _degree(config, spec.name))
        stem = f"dcf_{spec.name.value}_ch{curve.ch}"
        csv = write_curve_csv(curve, writer.path(f"{stem}.csv"))
        outputs += [csv, writer.stamp("dcf", csv, inputs=config.inputs)]
        outputs.append(
            writer.write_json(
                "dcf",
                f"{stem}.json",
                {"source": source, "curve": curve.model_dump(mode="json"), "polyfit": fit.model_dump(mode="json")},
                inputs=config.inputs,
            )
        )
    return outputs


def fit_curve(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """Polynomial fit per dcf artifact, at the configured degree of its model.

    :raises ConfigurationError: When no dcf artifact is given
    """
    if not config.inputs:
        raise ConfigurationError("fit-curve needs dcf artifacts in inputs")
    outputs = []
    for path in config.inputs:
        curve = DCFCurve.model_validate(read_artifact(path, "dcf")["curve"])
        fit = DeprivationCostCalculator.fit(curve, _degree(config, curve.spec_name))
        logger.info(f"{curve.spec_name.value} degree-{fit.degree} fit: adjusted R^2 {fit.adj_r_squared:.4f}")
        outputs.append(
            writer.write_json(
                "fit-curve",
                f"polyfit_{curve.spec_name.value}_ch{curve.ch}.json",
                {"polyfit": fit.model_dump(mode="json")},
                inputs=[path],
            )
        )
    return outputs
