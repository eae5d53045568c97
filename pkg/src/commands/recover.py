from pathlib import Path
from typing import List

from src.config import RunConfig
from src.services.artifacts.writer import ArtifactWriter
from src.services.simgen.recovery import recovery_experiment

from .common import design_for, spec_for, start_for, truth_for


def recover(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """Parameter recovery report per requested model."""
    design = design_for(config)
    inputs = [config.design_path] if config.design_path else []
    outputs = []
    for name in config.models:
        spec = spec_for(config, name)
        report = recovery_experiment(
            spec,
            truth_for(config, spec),
            config.population,
            design,
            config.draws,
            config.n_replications,
            options=config.optimizer,
            start=start_for(config, spec),
        )
        outputs.append(
            writer.write_json("recover", f"recover_{name.value}.json", {"report": report.model_dump(mode="json")}, inputs=inputs)
        )
    return outputs
