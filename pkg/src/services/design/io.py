import logging
from pathlib import Path
from typing import Optional

import pandas as pd
from pydantic import ValidationError
from src.exceptions import DesignException, EmptyDesignError
from src.schemas.design.models import Design, LevelSets, Scenario

logger = logging.getLogger(__name__)

DESIGN_COLUMNS = {"block": "block", "dt": "dt_days", "wt": "wt_days", "p": "pct_increase"}


def read_design(path: Path, levels: Optional[LevelSets] = None) -> Design:
    """Read a (block, dt, wt, p) file, one scenario per row.

    :raises DesignException: When the file is missing or malformed, or a level is not admissible
    """
    path = Path(path)
    if not path.exists():
        logger.error(f"Design file not found: {path}")
        raise DesignException(f"Design file not found: {path}")
    try:
        frame = pd.read_csv(path, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
        raise DesignException(f"Could not parse design {path}: {e}")

    missing = [c for c in DESIGN_COLUMNS if c not in frame.columns]
    if missing:
        raise DesignException(f"Design {path.name} lacks columns {missing}")
    if frame.empty:
        raise EmptyDesignError(f"Design {path.name} has no scenarios")

    try:
        scenarios = [
            Scenario(block=int(row["block"]), dt_days=float(row["dt"]), wt_days=float(row["wt"]), pct_increase=float(row["p"]))
            for row in frame.to_dict("records")
        ]
        design = Design(scenarios=scenarios, levels=levels or LevelSets())
    except ValidationError as e:
        raise DesignException(f"Invalid design {path.name}: {e}")
    logger.info(f"Loaded design with {len(design.scenarios)} scenarios in {len(design.block_ids)} blocks from {path}")
    return design


def write_design(design: Design, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = [{column: getattr(s, field) for column, field in DESIGN_COLUMNS.items()} for s in design.scenarios]
    pd.DataFrame(rows, columns=list(DESIGN_COLUMNS)).to_csv(path, index=False, encoding="utf-8")
    return path
