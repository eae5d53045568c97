import tomllib
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from src.exceptions import ConfigurationError
from src.schemas.dataset.models import ColumnSchema, IncomeBracket
from src.schemas.design.models import DesignSettings
from src.schemas.estimate.models import DrawConfig, OptimizerOptions
from src.schemas.simgen.models import PopulationConfig
from src.schemas.spec.models import ModelName, ParameterVector, TransformKind
from src.schemas.welfare.models import DCFConfig

PROJECT_ROOT = Path(__file__).parent.parent
ENV_FILE_PATH = PROJECT_ROOT / ".env"

DEFAULT_MODELS = [
    ModelName.MNL1,
    ModelName.MNL2,
    ModelName.ML1,
    ModelName.ML2,
    ModelName.ML3,
    ModelName.ML4,
    ModelName.ML5,
    ModelName.ML6,
    ModelName.MNL1_LOW,
    ModelName.MNL1_HIGH,
]


class BaseConfigSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=[".env", str(ENV_FILE_PATH)],
        env_prefix="DCF__",
        extra="forbid",
        frozen=True,
        env_nested_delimiter="__",
        case_sensitive=False,
    )


class RunConfig(BaseConfigSettings):
    """Resolved settings for one command-line invocation."""

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "INFO"
    output_dir: Path = Path("./artifacts")
    seed: Optional[int] = Field(None, description="Overrides draws, population and design seeds when set")

    models: List[ModelName] = Field(default_factory=lambda: list(DEFAULT_MODELS))
    data_path: Optional[Path] = Field(None, description="Choice data file read by estimate")
    design_path: Optional[Path] = Field(None, description="Design file (block, dt, wt, p)")
    inputs: List[Path] = Field(default_factory=list, description="Artifacts consumed by dcf, fit-curve and report")
    transform: Optional[TransformKind] = Field(None, description="Box-Cox or power form of the tau models")

    columns: ColumnSchema = Field(default_factory=ColumnSchema)
    lexicographic_rule: str = "same-alternative"
    income_threshold: IncomeBracket = IncomeBracket.FROM_75K_TO_100K
    min_respondents: int = Field(2, ge=1)

    draws: DrawConfig = Field(default_factory=DrawConfig)
    optimizer: OptimizerOptions = Field(default_factory=OptimizerOptions)
    dcf: DCFConfig = Field(default_factory=DCFConfig)
    population: PopulationConfig = Field(default_factory=PopulationConfig)
    design: DesignSettings = Field(default_factory=DesignSettings)

    truth: Optional[ParameterVector] = Field(None, description="Simulation truth; published estimates when unset")
    start: Optional[ParameterVector] = Field(None, description="Starting values; model defaults when unset")
    n_replications: int = Field(50, ge=1)
    polynomial_degrees: Dict[ModelName, int] = Field(
        default_factory=lambda: {name: (3 if name in (ModelName.ML5, ModelName.ML6) else 2) for name in DEFAULT_MODELS}
    )

    @field_validator("models")
    @classmethod
    def validate_models(cls, v: List[ModelName]) -> List[ModelName]:
        if not v:
            raise ValueError("at least one model is required")
        return v

    @field_validator("transform")
    @classmethod
    def validate_transform(cls, v: Optional[TransformKind]) -> Optional[TransformKind]:
        if v is not None and v not in (TransformKind.BOXCOX, TransformKind.POWER):
            raise ValueError("transform must be boxcox or power")
        return v

    def resolved(self) -> "RunConfig":
        """Copy with every path absolute and the shared seed pushed into the seeded sections."""
        update: Dict[str, Any] = {
            "output_dir": self.output_dir.resolve(),
            "data_path": self.data_path.resolve() if self.data_path else None,
            "design_path": self.design_path.resolve() if self.design_path else None,
            "inputs": [p.resolve() for p in self.inputs],
        }
        if self.seed is not None:
            update["draws"] = self.draws.model_copy(update={"seed": self.seed})
            update["population"] = self.population.model_copy(update={"seed": self.seed})
            update["design"] = self.design.model_copy(update={"seed": self.seed})
        return self.model_copy(update=update)


def load_run_config(path: Optional[Path] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Merge a TOML config file and command-line overrides over environment defaults.

    :param path: TOML file; nested tables map to the nested sections
    :param overrides: Dotted keys (e.g. ``"draws.n_draws"``) set from flags
    :returns: Validated configuration
    :raises ConfigurationError: When the file is missing or unreadable
    """
    data: Dict[str, Any] = {}
    if path is not None:
        if not path.exists():
            raise ConfigurationError(f"Config file not found: {path}")
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise ConfigurationError(f"Invalid TOML in {path}: {e}")

    for dotted, value in (overrides or {}).items():
        node = data
        *parents, leaf = dotted.split(".")
        for key in parents:
            node = node.setdefault(key, {})
        node[leaf] = value

    return RunConfig(**data)


@lru_cache
def get_settings() -> RunConfig:
    """Environment-only configuration."""
    return RunConfig()
