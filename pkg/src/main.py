import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError
from src.commands import COMMANDS
from src.config import RunConfig, load_run_config
from src.exceptions import (
    ConfigurationError,
    DatasetException,
    DesignException,
    EstimationException,
    SimulationException,
    SpecificationException,
    WelfareException,
)
from src.schemas.spec.models import ModelName
from src.schemas.welfare.models import DCFUnit
from src.services.artifacts.factory import make_artifact_writer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

EXIT_CODES = [
    ((ConfigurationError, SpecificationException, ValidationError), EXIT_USAGE),
    ((DatasetException,), EXIT_DATA),
    ((EstimationException, WelfareException, DesignException, SimulationException), EXIT_NUMERICAL),
]

UNITS = {"monthly": DCFUnit.MONTHLY_EQUIVALENT, "total12": DCFUnit.TOTAL_12_MONTH}


class CommandLineParser(argparse.ArgumentParser):
    """Usage errors exit with the configuration status instead of argparse's 2."""

    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CommandLineParser:
    parser = CommandLineParser(prog="deprivation-cost", description="Outage deprivation cost estimation toolkit")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command, handler in COMMANDS.items():
        sub = subparsers.add_parser(command, help=(handler.__doc__ or command).splitlines()[0])
        sub.add_argument("--config", type=Path, help="TOML config file")
        sub.add_argument("--seed", type=int, help="Seed for draws, population and design construction")
        sub.add_argument(
            "--model", action="append", choices=[m.value for m in ModelName], help="Model to run (repeatable); all ten by default"
        )
        sub.add_argument("--out", type=Path, help="Output directory")
        sub.add_argument("--draws", type=int, help="Simulation draws per respondent")
        sub.add_argument("--unit", choices=sorted(UNITS), help="Deprivation cost unit")
        sub.add_argument("--transform", choices=["boxcox", "power"], help="Time transform of the tau models")
        sub.add_argument("--data", type=Path, help="Choice data file")
        sub.add_argument("--design", type=Path, help="Design file (block, dt, wt, p)")
        sub.add_argument("--input", action="append", type=Path, help="Artifact to consume (repeatable)")
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Dotted config keys for every flag that was given."""
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.model:
        overrides["models"] = args.model
    if args.out is not None:
        overrides["output_dir"] = str(args.out)
    if args.draws is not None:
        overrides["draws.n_draws"] = args.draws
    if args.unit is not None:
        overrides["dcf.unit"] = UNITS[args.unit].value
    if args.transform is not None:
        overrides["transform"] = args.transform
        overrides["dcf.transform_variant"] = args.transform
    if args.data is not None:
        overrides["data_path"] = str(args.data)
    if args.design is not None:
        overrides["design_path"] = str(args.design)
    if args.input:
        overrides["inputs"] = [str(p) for p in args.input]
    return overrides


def exit_code(error: Exception) -> Optional[int]:
    for types, code in EXIT_CODES:
        if isinstance(error, types):
            return code
    return None


def report_paths(config: RunConfig) -> None:
    """Log every referenced path; artifacts and designs must exist before work starts.

    :raises ConfigurationError: When a design file or input artifact is missing
    """
    logger.info(f"Output directory: {config.output_dir}")
    if config.data_path is not None:
        logger.info(f"Data file: {config.data_path}")
    if config.design_path is not None:
        logger.info(f"Design file: {config.design_path}")
        if not config.design_path.exists():
            raise ConfigurationError(f"Design file not found: {config.design_path}")
    for path in config.inputs:
        logger.info(f"Input artifact: {path}")
        if not path.exists():
            raise ConfigurationError(f"Input artifact not found: {path}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    try:
        config = load_run_config(args.config, overrides_from_args(args)).resolved()
        logging.getLogger().setLevel(config.log_level)
        report_paths(config)
        outputs = COMMANDS[args.command](config, make_artifact_writer(config))
    except Exception as e:
        code = exit_code(e)
        if code is None:
            raise
        logger.error(f"{args.command} failed: {e}")
        return code

    logger.info(f"{args.command} wrote {len(outputs)} files to {config.output_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
