from pathlib import Path
from typing import List

from src.config import RunConfig
from src.schemas.estimate.models import EstimationResult
from src.services.artifacts.writer import ArtifactWriter, read_artifact
from src.services.report.table import ReportColumn, render_report, rho_square_notes


def report(config: RunConfig, writer: ArtifactWriter) -> List[Path]:
    """Text table over estimation artifacts, or over the published columns when no inputs are given."""
    if config.inputs:
        columns = [
            ReportColumn.from_result(EstimationResult.model_validate(read_artifact(path, "estimate")["result"]))
            for path in config.inputs
        ]
        title = "Estimation results"
    else:
        columns = [ReportColumn.published(name) for name in config.models]
        title = "Published estimation results"
    text = render_report(columns, title=title)
    print(text, end="")
    payload = {
        "columns": [c.model_dump(mode="json") for c in columns],
        "notes": rho_square_notes([c.name for c in columns]),
    }
    table = writer.write_text("report.txt", text)
    return [
        table,
        writer.stamp("report", table, inputs=config.inputs),
        writer.write_json("report", "report.json", payload, inputs=config.inputs),
    ]
