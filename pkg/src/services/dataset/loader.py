import logging
from collections import Counter
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple

import pandas as pd
from pydantic import ValidationError
from src.exceptions import (
    DataValidationError,
    DatasetException,
    DatasetNotFoundError,
    DuplicateScenarioError,
    MissingColumnError,
)
from src.schemas.dataset.models import (
    MAX_SCENARIOS_PER_RESPONDENT,
    ChoiceDataset,
    ChoiceObservation,
    ColumnSchema,
    IncomeBracket,
    Respondent,
    StormExperience,
)

logger = logging.getLogger(__name__)

_PURCHASE_TOKENS = {"1", "true", "yes", "purchase", "p"}
_WAIT_TOKENS = {"0", "false", "no", "wait", "w"}
# row numbers count the header as row 1
_FIRST_DATA_ROW = 2


def _parse_choice(raw: str) -> Optional[bool]:
    text = raw.strip().lower()
    if text == "":
        return None
    if text in _PURCHASE_TOKENS:
        return True
    if text in _WAIT_TOKENS:
        return False
    raise ValueError(f"choice {raw!r} is neither purchase nor wait")


def _optional(raw: Optional[str]) -> Optional[str]:
    if raw is None:
        return None
    text = raw.strip()
    return text or None


def _format_row_errors(row_errors: List[Tuple[int, str]], limit: int = 5) -> str:
    shown = "; ".join(f"row {row}: {reason}" for row, reason in row_errors[:limit])
    more = f" (+{len(row_errors) - limit} more)" if len(row_errors) > limit else ""
    return f"{shown}{more}"


class ChoiceDataLoader:
    """Reads and writes one-row-per-scenario choice files through a column mapping."""

    def __init__(self, schema: ColumnSchema, strict: bool = True):
        """
        :param schema: Header names of each field
        :param strict: Raise on the first failing rows; when False they are skipped and recorded in provenance
        """
        self.schema = schema
        self.strict = strict

    def load(self, path: Path) -> ChoiceDataset:
        """Load and validate a delimited choice file.

        :param path: UTF-8 file with a header row
        :returns: Validated dataset
        :raises DatasetNotFoundError: When the file does not exist
        :raises MissingColumnError: When a required column is absent from the header
        :raises DuplicateScenarioError: When a respondent answers a scenario twice or more than four scenarios
        :raises DataValidationError: When rows fail coercion or an invariant (strict mode)
        """
        path = Path(path)
        if not path.exists():
            logger.error(f"Choice data file not found: {path}")
            raise DatasetNotFoundError(f"Choice data file not found: {path}")

        try:
            frame = pd.read_csv(path, sep=self.schema.delimiter, dtype=str, keep_default_na=False, encoding="utf-8")
        except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
            logger.error(f"Could not parse {path}: {e}")
            raise DataValidationError(f"Could not parse {path}: {e}")

        columns = self._resolve_columns(frame.columns, path)
        records = frame.to_dict("records")
        self._check_scenario_counts(records, columns["respondent_id"])

        respondents: Dict[str, Respondent] = {}
        observations: List[ChoiceObservation] = []
        seen_scenarios: Dict[Tuple[str, int], int] = {}
        row_errors: List[Tuple[int, str]] = []

        for offset, record in enumerate(records):
            row = offset + _FIRST_DATA_ROW
            try:
                obs = self._parse_observation(record, columns)
                respondent = self._parse_respondent(record, columns, obs.respondent_id)
            except (ValidationError, ValueError) as e:
                row_errors.append((row, self._reason(e)))
                continue

            key = (obs.respondent_id, obs.scenario_index)
            if key in seen_scenarios:
                message = (
                    f"row {row}: respondent {obs.respondent_id} answers scenario {obs.scenario_index} "
                    f"already given in row {seen_scenarios[key]}"
                )
                logger.error(message)
                raise DuplicateScenarioError(message)

            known = respondents.get(obs.respondent_id)
            if known is not None and known != respondent:
                row_errors.append((row, f"respondent {obs.respondent_id} attributes differ from an earlier row"))
                continue

            seen_scenarios[key] = row
            respondents[obs.respondent_id] = respondent
            observations.append(obs)

        if row_errors and self.strict:
            summary = f"{len(row_errors)} rows of {path.name} failed validation: {_format_row_errors(row_errors)}"
            logger.error(summary)
            raise DataValidationError(summary, row_errors)
        if row_errors:
            logger.warning(f"Skipped {len(row_errors)} invalid rows of {path.name}: {_format_row_errors(row_errors)}")

        try:
            dataset = ChoiceDataset(
                respondents=list(respondents.values()),
                observations=observations,
                provenance={
                    "source": str(path),
                    "rows": len(records),
                    "skipped_rows": [{"row": row, "reason": reason} for row, reason in row_errors],
                    "filters": [],
                },
            )
        except ValidationError as e:
            raise DataValidationError(f"Dataset invariant violated in {path.name}: {self._reason(e)}")

        logger.info(f"Loaded {dataset.n_obs} observations from {dataset.n_respondents} respondents ({path.name})")
        return dataset

    def export(self, dataset: ChoiceDataset, path: Path) -> Path:
        """Write ``dataset`` in the format :meth:`load` reads back."""
        schema = self.schema
        by_id = dataset.respondents_by_id()
        rows: List[Dict[str, Any]] = []
        for obs in dataset.observations:
            respondent = by_id[obs.respondent_id]
            row: Dict[str, Any] = {
                schema.respondent_id: obs.respondent_id,
                schema.block_id: obs.block_id,
                schema.scenario_index: obs.scenario_index,
                schema.dt_days: obs.dt_days,
                schema.wt_days: obs.wt_days,
                schema.bill_base: obs.bill_base,
                schema.chose_purchase: "" if obs.chose_purchase is None else int(obs.chose_purchase),
            }
            if schema.pct_increase is not None:
                row[schema.pct_increase] = obs.pct_increase
            if schema.cost_final is not None:
                row[schema.cost_final] = obs.cost_final
            for field, column in schema.respondent_columns().items():
                value = getattr(respondent, field)
                if isinstance(value, IncomeBracket):
                    value = int(value)
                elif isinstance(value, StormExperience):
                    value = value.value
                row[column] = "" if value is None else value
            rows.append(row)

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.DataFrame(rows).to_csv(path, sep=schema.delimiter, index=False, encoding="utf-8")
        logger.info(f"Wrote {len(rows)} observations to {path}")
        return path

    def _resolve_columns(self, header: Iterable[str], path: Path) -> Dict[str, str]:
        present = set(header)
        columns = dict(self.schema.required_columns())
        missing = [f"{field} ({column!r})" for field, column in columns.items() if column not in present]
        if missing:
            logger.error(f"{path.name} lacks required columns: {missing}")
            raise MissingColumnError(f"{path.name} lacks required columns: {', '.join(missing)}")

        for field in ("pct_increase", "cost_final"):
            column = getattr(self.schema, field)
            if column is not None and column in present:
                columns[field] = column
        if "pct_increase" not in columns and "cost_final" not in columns:
            raise MissingColumnError(f"{path.name} has neither a pct_increase nor a cost_final column")

        for field, column in self.schema.respondent_columns().items():
            if column in present:
                columns[field] = column
        return columns

    @staticmethod
    def _check_scenario_counts(records: List[Dict[str, str]], id_column: str) -> None:
        counts: Counter = Counter()
        for offset, record in enumerate(records):
            rid = record[id_column].strip()
            counts[rid] += 1
            if counts[rid] > MAX_SCENARIOS_PER_RESPONDENT:
                message = (
                    f"row {offset + _FIRST_DATA_ROW}: respondent {rid} has more than "
                    f"{MAX_SCENARIOS_PER_RESPONDENT} scenario rows"
                )
                logger.error(message)
                raise DuplicateScenarioError(message)

    @staticmethod
    def _parse_observation(record: Dict[str, str], columns: Dict[str, str]) -> ChoiceObservation:
        bill = float(record[columns["bill_base"]])
        pct_raw = _optional(record.get(columns["pct_increase"])) if "pct_increase" in columns else None
        cost_raw = _optional(record.get(columns["cost_final"])) if "cost_final" in columns else None
        if pct_raw is None and cost_raw is None:
            raise ValueError("neither pct_increase nor cost_final is given")
        pct = float(pct_raw) if pct_raw is not None else float(cost_raw) / bill - 1.0  # type: ignore[arg-type]
        cost = float(cost_raw) if cost_raw is not None else bill * (1.0 + pct)

        return ChoiceObservation(
            respondent_id=record[columns["respondent_id"]].strip(),
            block_id=int(record[columns["block_id"]]),
            scenario_index=int(record[columns["scenario_index"]]),
            dt_days=float(record[columns["dt_days"]]),
            wt_days=float(record[columns["wt_days"]]),
            bill_base=bill,
            pct_increase=pct,
            cost_final=cost,
            chose_purchase=_parse_choice(record[columns["chose_purchase"]]),
        )

    @staticmethod
    def _parse_respondent(record: Dict[str, str], columns: Dict[str, str], respondent_id: str) -> Respondent:
        def value(field: str) -> Optional[str]:
            return _optional(record.get(columns[field])) if field in columns else None

        income = value("income_bracket")
        household = value("household_size")
        children = value("children_count")
        age = value("age")
        storm = value("storm_experience")
        return Respondent(
            id=respondent_id,
            income_bracket=IncomeBracket.parse(income) if income is not None else None,
            household_size=int(household) if household is not None else None,
            children_count=int(children) if children is not None else None,
            age=float(age) if age is not None else None,
            gender=value("gender"),
            storm_experience=StormExperience(storm.lower()) if storm is not None else None,
        )

    @staticmethod
    def _reason(error: Exception) -> str:
        if isinstance(error, ValidationError):
            return "; ".join(f"{'.'.join(str(p) for p in e['loc']) or 'row'}: {e['msg']}" for e in error.errors())
        return str(error)


def load_dataset(path: Path, schema: Optional[ColumnSchema] = None, strict: bool = True) -> ChoiceDataset:
    return ChoiceDataLoader(schema or ColumnSchema(), strict=strict).load(path)


def export_dataset(dataset: ChoiceDataset, path: Path, schema: Optional[ColumnSchema] = None) -> Path:
    return ChoiceDataLoader(schema or ColumnSchema()).export(dataset, path)


def write_exclusions(respondent_ids: List[str], path: Path) -> Path:
    """Audit list of excluded respondents, one id per line."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    try:
        path.write_text("".join(f"{rid}\n" for rid in respondent_ids), encoding="utf-8")
    except OSError as e:
        raise DatasetException(f"Could not write exclusion list {path}: {e}")
    return path
