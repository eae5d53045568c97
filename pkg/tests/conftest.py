from itertools import count
from pathlib import Path
from typing import Callable, Dict, List, Optional

import pytest
from polyfactory import Use
from polyfactory.factories.pydantic_factory import ModelFactory
from src.schemas.dataset.models import ChoiceDataset, ChoiceObservation, IncomeBracket, Respondent
from src.schemas.design.models import Design, LevelSets
from src.schemas.estimate.models import DrawConfig
from src.schemas.simgen.models import PopulationConfig
from src.schemas.spec.models import ModelName
from src.services.design.builder import build_balanced_design
from src.services.simgen.choices import simulate_choices
from src.services.simgen.population import generate_population
from src.services.spec.catalog import MODEL_CATALOG, PUBLISHED_ESTIMATES


_respondent_ids = count(1)


class RespondentFactory(ModelFactory[Respondent]):
    __model__ = Respondent

    id = Use(lambda: f"R{next(_respondent_ids):05d}")
    income_bracket = IncomeBracket.FROM_50K_TO_75K
    household_size = 4
    children_count = 0
    age = 45.0
    gender = None
    storm_experience = None


def make_panel(answers: Dict[str, List[Optional[bool]]], respondents: Optional[List[Respondent]] = None) -> ChoiceDataset:
    """Panel whose respondent ``rid`` answers block 1 scenarios in order with ``answers[rid]``."""
    respondents = respondents or [RespondentFactory.build(id=rid) for rid in answers]
    block = build_balanced_design(LevelSets()).block(1)
    observations = [
        ChoiceObservation(
            respondent_id=rid,
            block_id=1,
            scenario_index=position,
            dt_days=scenario.dt_days,
            wt_days=scenario.wt_days,
            bill_base=120.0,
            pct_increase=scenario.pct_increase,
            cost_final=120.0 * (1.0 + scenario.pct_increase),
            chose_purchase=choice,
        )
        for rid, choices in answers.items()
        for position, (scenario, choice) in enumerate(zip(block, choices), start=1)
    ]
    return ChoiceDataset(respondents=respondents, observations=observations, provenance={"source": "test", "filters": []})


@pytest.fixture
def design() -> Design:
    return build_balanced_design(LevelSets())


@pytest.fixture
def small_draws() -> DrawConfig:
    return DrawConfig(n_draws=50, seed=11)


def simulate_published(name: ModelName, design: Design, n_respondents: int, seed: int) -> ChoiceDataset:
    skeleton = generate_population(PopulationConfig(n_respondents=n_respondents, seed=seed), design)
    return simulate_choices(skeleton, MODEL_CATALOG[name], PUBLISHED_ESTIMATES[name].estimates, seed + 1)


@pytest.fixture
def respondent_factory() -> type[RespondentFactory]:
    return RespondentFactory


@pytest.fixture
def panel_builder() -> Callable[..., ChoiceDataset]:
    return make_panel


@pytest.fixture
def published_panel() -> Callable[..., ChoiceDataset]:
    return simulate_published


@pytest.fixture
def mnl1_panel(design: Design) -> ChoiceDataset:
    return simulate_published(ModelName.MNL1, design, n_respondents=150, seed=3)


@pytest.fixture
def ml1_panel(design: Design) -> ChoiceDataset:
    return simulate_published(ModelName.ML1, design, n_respondents=80, seed=5)


@pytest.fixture
def choice_csv(tmp_path: Path) -> Path:
    """Two respondents, four scenarios each, in the default column layout."""
    lines = ["respondent_id,block,scenario,dt,wt,bill,pct_increase,choice,income,household_size,children"]
    for rid, income, household, children, choices in (("A1", 2, 4, 2, "1010"), ("A2", 5, 3, 0, "0011")):
        for position, choice in enumerate(choices, start=1):
            lines.append(f"{rid},1,{position},{position},{position + 1},100,0.25,{choice},{income},{household},{children}")
    path = tmp_path / "choices.csv"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
