import logging
from pathlib import Path

import pandas as pd
from src.exceptions import WelfareException
from src.schemas.welfare.models import DCFCurve

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["time_days", "cost_dollars", "unit", "spec", "ch"]


def curve_frame(curve: DCFCurve) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "time_days": curve.times,
            "cost_dollars": curve.costs,
            "unit": curve.unit.value,
            "spec": curve.spec_name.value,
            "ch": curve.ch,
        },
        columns=CURVE_COLUMNS,
    )


def write_curve_csv(curve: DCFCurve, path: Path) -> Path:
    """Delimited curve export, one grid point per row."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        curve_frame(curve).to_csv(path, index=False, encoding="utf-8")
    except OSError as e:
        raise WelfareException(f"Could not write curve {path}: {e}")
    logger.info(f"Wrote {len(curve.times)}-point {curve.spec_name.value} curve to {path}")
    return path
