import logging
from pathlib import Path
from typing import Dict, List

from src.config import RunConfig
from src.exceptions import ConfigurationError, DataValidationError
from src.schemas.dataset.models import ChoiceDataset
from src.schemas.spec.models import ModelName
from src.services.artifacts.writer import ArtifactWriter
from src.services.dataset.loader import export_dataset, load_dataset, write_exclusions
from src.services.dataset.panel import filter_lexicographic, purchase_share_by_children, split_by_income
from src.services.estimate.estimator import ChoiceModelEstimator
from src.services.simgen.simulator import ChoiceSimulator

from .common import design_for, spec_for, start_for, truth_for

logger = logging.getLogger(__name__)

INCOME_SPLIT_MODELS = (ModelName.MNL1_LOW, ModelName.MNL1_HIGH)


def simulate(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """Synthetic dataset per requested model, in the loader's file format."""
    design = design_for(config)
    simulator = ChoiceSimulator(config.population, config.draws, config.optimizer)
    inputs = [config.design_path] if config.design_path else []
    outputs = []
    for name in config.models:
        spec = spec_for(config, name)
        truth = truth_for(config, spec)
        data = simulator.simulate(design, spec, truth)
        path = export_dataset(data, writer.path(f"simulated_{name.value}.csv"), config.columns)
        outputs += [path, writer.stamp("simulate", path, inputs=inputs)]
        outputs.append(
            writer.write_json(
                "simulate",
                f"simulated_{name.value}.json",
                {
                    "spec_name": name.value,
                    "truth": truth.model_dump(mode="json", exclude_none=True),
                    "dataset": path.name,
                    "n_respondents": data.n_respondents,
                    "n_obs": data.n_obs,
                    "purchase_share": sum(bool(o.chose_purchase) for o in data.observations) / data.n_obs,
                    "provenance": data.provenance,
                },
                inputs=inputs,
            )
        )
    return outputs


def _require_respondents(data: ChoiceDataset, minimum: int, name: ModelName) -> None:
    if data.n_respondents < minimum:
        logger.error(f"{name.value}: {data.n_respondents} respondents after filtering, at least {minimum} required")
        raise DataValidationError(
            f"{name.value} needs at least {minimum} respondents after filtering, found {data.n_respondents}"
        )


def estimation_samples(config: RunConfig, data: ChoiceDataset) -> Dict[ModelName, ChoiceDataset]:
    """Sample per requested model: the filtered panel, or its income half for the split models."""
    samples = {name: data for name in config.models}
    if any(name in INCOME_SPLIT_MODELS for name in config.models):
        low, high, unassigned = split_by_income(data, config.income_threshold)
        if unassigned:
            logger.info(f"{len(unassigned)} respondents without income left out of the income split")
        samples.update({name: sample for name, sample in zip(INCOME_SPLIT_MODELS, (low, high)) if name in samples})
    for name, sample in samples.items():
        _require_respondents(sample, config.min_respondents, name)
    return samples


def estimate(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """Fit every requested model and write one estimation artifact each.

    :raises ConfigurationError: When no data file is configured
    :raises DataValidationError: When a sample has fewer than ``min_respondents`` respondents
    """
    if config.data_path is None:
        raise ConfigurationError("estimate needs data_path in the config file or environment")
    data = load_dataset(config.data_path, config.columns)

    kept, excluded = filter_lexicographic(data, config.lexicographic_rule)
    inputs = [config.data_path]
    outputs = []
    if excluded:
        exclusions = write_exclusions(excluded, writer.path("excluded_respondents.txt"))
        outputs += [exclusions, writer.stamp("estimate", exclusions, inputs=inputs)]
    samples = estimation_samples(config, kept)

    shares = purchase_share_by_children(kept)
    estimator = ChoiceModelEstimator(config.draws, config.optimizer)
    for name, sample in samples.items():
        spec = spec_for(config, name)
        result = estimator.fit(spec, sample, start=start_for(config, spec))
        payload = {
            "result": result.model_dump(mode="json"),
            "sample": {
                "filters": sample.provenance.get("filters", []),
                "n_excluded_lexicographic": len(excluded),
            },
        }
        if not shares.empty:
            payload["sample"]["purchase_share_by_children"] = {
                str(int(ch)): float(share) for ch, share in shares["purchase_share"].items()
            }
        outputs.append(writer.write_json("estimate", f"estimate_{name.value}.json", payload, inputs=inputs))
    return outputs
