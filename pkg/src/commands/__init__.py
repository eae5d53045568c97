from pathlib import Path
from typing import Callable, Dict, List

from src.config import RunConfig
from src.services.artifacts.writer import ArtifactWriter

from .data import estimate, simulate
from .design import design_eval
from .recover import recover
from .report import report
from .welfare import dcf, fit_curve

CommandHandler = Callable[[RunConfig, ArtifactWriter], List[Path]]

COMMANDS: Dict[str, CommandHandler] = {
    "simulate": simulate,
    "estimate": estimate,
    "dcf": dcf,
    "fit-curve": fit_curve,
    "design-eval": design_eval,
    "recover": recover,
    "report": report,
}

__all__ = ["COMMANDS", "CommandHandler"]
