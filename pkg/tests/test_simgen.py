import numpy as np
import pandas as pd
import pytest
from scipy.special import expit
from src.exceptions import EstimationException, ParameterMismatchError, SimulationException
from src.schemas.design.models import Design, LevelSets
from src.schemas.estimate.models import DrawConfig, OptimizerOptions
from src.schemas.simgen.models import BillDistribution, BillFamily, PopulationConfig
from src.schemas.spec.models import ModelName, ParameterVector
from src.services.design.builder import build_balanced_design
from src.services.estimate.estimator import ChoiceModelEstimator
from src.services.simgen import ChoiceSimulator, generate_population, recovery_experiment, replication_seeds, simulate_choices
from src.services.spec.catalog import MODEL_CATALOG, PUBLISHED_ESTIMATES
from src.services.spec.utility import utility_difference


def truth(name: ModelName) -> ParameterVector:
    return PUBLISHED_ESTIMATES[name].estimates


def test_population_follows_the_design(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=25, seed=1), design)

    assert skeleton.n_respondents == 25
    assert skeleton.n_obs == 100
    assert skeleton.respondents[0].id == "S00001"
    assert all(o.chose_purchase is None for o in skeleton.observations)
    by_block = {o.block_id for o in skeleton.observations}
    assert by_block <= set(design.block_ids)
    for rid, observations in skeleton.observations_by_respondent().items():
        assert [o.scenario_index for o in observations] == [1, 2, 3, 4]
        assert len({o.bill_base for o in observations}) == 1
        assert len({o.block_id for o in observations}) == 1


def test_population_bills_and_household_composition(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=400, seed=2), design)
    bills = np.array([o.bill_base for o in skeleton.observations])
    flags = np.array([r.children_flag for r in skeleton.respondents])

    assert bills.min() >= 30.0 and bills.max() <= 1000.0
    assert np.allclose(bills, np.round(bills, 2))
    assert set(flags) <= {0, 1}
    assert 0.3 < flags.mean() < 0.56
    assert all(o.cost_final == pytest.approx(o.bill_base * (1 + o.pct_increase)) for o in skeleton.observations)


def test_population_is_seeded(design: Design):
    config = PopulationConfig(n_respondents=10, seed=4)
    assert generate_population(config, design) == generate_population(config, design)


def test_constant_bills(design: Design):
    config = PopulationConfig(n_respondents=5, bill_distribution=BillDistribution(family=BillFamily.CONSTANT, median=80.0))

    skeleton = generate_population(config, design)

    assert {o.bill_base for o in skeleton.observations} == {80.0}


def test_population_rejects_designs_beyond_the_survey_shape():
    too_many_blocks = build_balanced_design(LevelSets(), n_blocks=10)
    with pytest.raises(SimulationException):
        generate_population(PopulationConfig(n_respondents=3), too_many_blocks)


def test_simulated_choices_are_seeded_and_complete(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=30, seed=6), design)
    spec = MODEL_CATALOG[ModelName.ML2]

    first = simulate_choices(skeleton, spec, truth(ModelName.ML2), seed=7)
    again = simulate_choices(skeleton, spec, truth(ModelName.ML2), seed=7)

    assert first == again
    assert all(o.chose_purchase is not None for o in first.observations)
    assert first.provenance["choice_seed"] == 7
    assert first.provenance["simulated_from"] == "ML2"


def test_dominant_constant_makes_everyone_purchase(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=20, seed=6), design)
    params = truth(ModelName.MNL1).model_copy(update={"asc": 60.0})

    data = simulate_choices(skeleton, MODEL_CATALOG[ModelName.MNL1], params, seed=1)

    assert all(o.chose_purchase for o in data.observations)


def test_simulation_argument_errors(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=3), design)
    random_time = MODEL_CATALOG[ModelName.ML1].model_copy(update={"random_time_coefficient": True})

    with pytest.raises(SimulationException):
        simulate_choices(skeleton, random_time, truth(ModelName.ML1).model_copy(update={"sigma_t": 0.1}), seed=1)
    with pytest.raises(ParameterMismatchError):
        simulate_choices(skeleton, MODEL_CATALOG[ModelName.ML1], truth(ModelName.MNL1), seed=1)


def test_replication_seeds_are_deterministic_and_distinct():
    seeds = replication_seeds(12, 20)

    assert seeds == replication_seeds(12, 20)
    assert len(set(seeds)) == 20
    assert replication_seeds(12, 3) == seeds[:3]


def test_simulator_defaults_choice_seed_to_population_seed_plus_one(design: Design):
    population = PopulationConfig(n_respondents=12, seed=30)
    simulator = ChoiceSimulator(population, DrawConfig(n_draws=20), OptimizerOptions())
    spec = MODEL_CATALOG[ModelName.MNL1]

    data = simulator.simulate(design, spec, truth(ModelName.MNL1))

    assert data == simulate_choices(generate_population(population, design), spec, truth(ModelName.MNL1), 31)


def test_small_recovery_report(design: Design):
    report = recovery_experiment(
        MODEL_CATALOG[ModelName.MNL1],
        truth(ModelName.MNL1),
        PopulationConfig(n_respondents=120, seed=3),
        design,
        DrawConfig(),
        n_replications=3,
    )

    assert report.n_replications == 3 and report.n_failed == 0
    assert [p.name for p in report.parameters] == ["asc", "beta_c", "beta_t"]
    assert all(p.mean_std_error and p.mean_std_error > 0 for p in report.parameters)
    assert 0.0 <= report.convergence_rate <= 1.0


def test_recovery_counts_failed_fits(design: Design, mocker):
    mocker.patch.object(ChoiceModelEstimator, "fit", side_effect=EstimationException("diverged"))

    with pytest.raises(SimulationException, match="All 2 replications"):
        recovery_experiment(
            MODEL_CATALOG[ModelName.MNL1],
            truth(ModelName.MNL1),
            PopulationConfig(n_respondents=10),
            design,
            DrawConfig(),
            n_replications=2,
        )


def test_recovery_fits_start_at_the_default_unless_given(design: Design, mocker):
    spy = mocker.spy(ChoiceModelEstimator, "fit")
    spec = MODEL_CATALOG[ModelName.MNL1]
    config = PopulationConfig(n_respondents=60, seed=4)

    recovery_experiment(spec, truth(ModelName.MNL1), config, design, DrawConfig(), n_replications=1)
    recovery_experiment(spec, truth(ModelName.MNL1), config, design, DrawConfig(), n_replications=1, start=truth(ModelName.MNL1))

    assert spy.call_args_list[0].kwargs["start"] is None
    assert spy.call_args_list[1].kwargs["start"] == truth(ModelName.MNL1)


def test_zero_truth_is_a_fair_coin(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=680, seed=9), design)

    data = simulate_choices(skeleton, MODEL_CATALOG[ModelName.MNL1], ParameterVector(), seed=10)

    share = np.mean([o.chose_purchase for o in data.observations])
    assert abs(share - 0.5) < 3.0 * np.sqrt(0.25 / 2720)


def test_strongly_negative_constant_suppresses_purchases(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=680, seed=9), design)

    data = simulate_choices(skeleton, MODEL_CATALOG[ModelName.MNL1], ParameterVector(asc=-20.0), seed=10)

    assert np.mean([o.chose_purchase for o in data.observations]) < 0.001


def test_purchase_share_falls_with_cost(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=5000, seed=11), design)
    data = simulate_choices(skeleton, MODEL_CATALOG[ModelName.MNL1], truth(ModelName.MNL1), seed=12)
    frame = pd.DataFrame(
        {"cost": [o.cost_final for o in data.observations], "chose": [o.chose_purchase for o in data.observations]}
    )

    shares = frame.groupby(pd.qcut(frame["cost"], 4, labels=False))["chose"].mean().to_numpy()

    assert np.all(np.diff(shares) < 0)


def test_average_simulated_share_matches_logit_probability(design: Design):
    skeleton = generate_population(PopulationConfig(n_respondents=25, seed=13), design)
    spec = MODEL_CATALOG[ModelName.MNL1]
    observations = skeleton.observations
    v = utility_difference(
        spec,
        truth(ModelName.MNL1),
        np.array([o.dt_days for o in observations]),
        np.array([o.wt_days for o in observations]),
        np.array([o.cost_final for o in observations]),
        np.zeros(len(observations)),
    )
    p = expit(v)
    n_runs = 400

    total = sum(
        sum(o.chose_purchase for o in simulate_choices(skeleton, spec, truth(ModelName.MNL1), seed).observations)
        for seed in range(n_runs)
    )

    expected = n_runs * p.sum()
    assert abs(total - expected) < 3.0 * np.sqrt(n_runs * np.sum(p * (1 - p)))


def first_two_answers(data) -> np.ndarray:
    return np.array([[o.chose_purchase for o in panel[:2]] for panel in data.observations_by_respondent().values()], dtype=float)


@pytest.mark.parametrize("sigma_xi, correlated", [(1.7, True), (0.0, False)])
def test_panel_effect_correlates_answers_within_respondent(design: Design, sigma_xi, correlated):
    # without cost or time effects every answer has the same marginal probability
    skeleton = generate_population(PopulationConfig(n_respondents=2000, seed=14), design)
    params = ParameterVector(asc=-1.0, sigma_xi=sigma_xi)

    answers = first_two_answers(simulate_choices(skeleton, MODEL_CATALOG[ModelName.ML1], params, seed=15))

    corr = np.corrcoef(answers[:, 0], answers[:, 1])[0, 1]
    if correlated:
        assert corr > 0.1
    else:
        assert abs(corr) < 3.0 / np.sqrt(2000)


@pytest.mark.slow
def test_mnl1_recovery_covers_the_truth(design: Design):
    report = recovery_experiment(
        MODEL_CATALOG[ModelName.MNL1],
        truth(ModelName.MNL1),
        PopulationConfig(n_respondents=680, seed=101),
        design,
        DrawConfig(),
        n_replications=200,
    )

    assert report.n_failed == 0
    assert report.convergence_rate >= 0.95
    for parameter in report.parameters:
        assert 0.88 <= parameter.coverage <= 0.995
        assert abs(parameter.bias) < 0.5 * parameter.mean_std_error


@pytest.mark.slow
def test_ml1_estimates_lie_near_the_truth(design: Design):
    spec = MODEL_CATALOG[ModelName.ML1]
    report = recovery_experiment(
        spec,
        truth(ModelName.ML1),
        PopulationConfig(n_respondents=680, seed=202),
        design,
        DrawConfig(n_draws=500),
        n_replications=4,
    )

    for parameter in report.parameters:
        assert parameter.mean_std_error is not None
        assert abs(parameter.bias) <= 2.0 * parameter.mean_std_error


@pytest.mark.slow
def test_ml3_unit_exponent_is_covered(design: Design):
    spec = MODEL_CATALOG[ModelName.ML3]
    report = recovery_experiment(
        spec,
        truth(ModelName.ML3).model_copy(update={"tau": 1.0}),
        PopulationConfig(n_respondents=680, seed=303),
        design,
        DrawConfig(n_draws=100),
        n_replications=40,
    )

    tau = next(p for p in report.parameters if p.name == "tau")
    assert tau.coverage is not None and tau.coverage >= 0.9
