from pathlib import Path
from typing import List

from src.config import RunConfig
from src.schemas.design.models import Design, Scenario
from src.services.artifacts.writer import ArtifactWriter
from src.services.design.evaluator import DesignEvaluator
from src.services.design.io import write_design

from .common import design_for


def design_eval(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """D-error and level balance of the configured design; with a search budget also the improved design."""
    design = design_for(config)
    report = DesignEvaluator(config.design).report(design)
    inputs = [config.design_path] if config.design_path else []
    written = []
    if "search" in report:
        improved = Design(scenarios=[Scenario(**s) for s in report["search"]["design"]], levels=design.levels)
        written.append(write_design(improved, writer.path("design_improved.csv")))
    if config.design_path is None:
        written.append(write_design(design, writer.path("design_default.csv")))
    outputs = [out for path in written for out in (path, writer.stamp("design-eval", path, inputs=inputs))]
    outputs.append(writer.write_json("design-eval", "design_eval.json", report, inputs=inputs))
    return outputs
