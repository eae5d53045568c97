import hashlib
import json
from pathlib import Path

import pandas as pd
import pytest
from src.commands import COMMANDS
from src.exceptions import EstimationException
from src.main import EXIT_DATA, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def out(tmp_path: Path) -> Path:
    return tmp_path / "out"


@pytest.fixture
def small_run(tmp_path: Path) -> Path:
    path = tmp_path / "small.toml"
    path.write_text("[population]\nn_respondents = 60\nseed = 8\n", encoding="utf-8")
    return path


def read_json(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def test_report_prints_published_columns_with_notes(out: Path, capsys):
    code = main(["report", "--model", "MNL1", "--model", "ML1", "--out", str(out)])

    printed = capsys.readouterr().out
    assert code == EXIT_OK
    assert "Published estimation results" in printed
    assert "0.2056" in printed
    assert (out / "report.txt").read_text(encoding="utf-8") == printed
    document = read_json(out / "report.json")
    assert document["command"] == "report"
    assert len(document["notes"]) == 2
    assert len(document["input_hash"]) == 64


def test_dcf_from_published_estimates(out: Path):
    assert main(["dcf", "--model", "MNL1", "--out", str(out)]) == EXIT_OK

    curve = pd.read_csv(out / "dcf_MNL1_ch0.csv")
    document = read_json(out / "dcf_MNL1_ch0.json")
    assert curve["time_days"].iloc[-1] == 30.0
    assert curve["cost_dollars"].iloc[-1] == pytest.approx(26294.4)
    assert document["source"] == "published"
    assert document["polyfit"]["degree"] == 2


def test_dcf_unit_flag(out: Path):
    assert main(["dcf", "--model", "MNL1", "--unit", "monthly", "--out", str(out)]) == EXIT_OK

    assert pd.read_csv(out / "dcf_MNL1_ch0.csv")["cost_dollars"].iloc[-1] == pytest.approx(2191.2)


def test_fit_curve_reads_dcf_artifacts(out: Path):
    assert main(["dcf", "--model", "ML5", "--out", str(out)]) == EXIT_OK

    code = main(["fit-curve", "--input", str(out / "dcf_ML5_ch0.json"), "--out", str(out)])

    fit = read_json(out / "polyfit_ML5_ch0.json")["polyfit"]
    assert code == EXIT_OK
    assert fit["degree"] == 3
    assert fit["adj_r_squared"] >= 0.99


def test_fit_curve_rejects_artifacts_of_other_commands(out: Path):
    assert main(["report", "--model", "MNL1", "--out", str(out)]) == EXIT_OK
    assert main(["fit-curve", "--input", str(out / "report.json"), "--out", str(out)]) == EXIT_USAGE


def test_design_eval_of_default_design(out: Path):
    assert main(["design-eval", "--out", str(out)]) == EXIT_OK

    document = read_json(out / "design_eval.json")
    assert document["singular"] is False
    assert document["d_error"] > 0
    assert document["balance"]["per_block"]["1"]["dt_days"]["imbalance"] == 0
    assert len(pd.read_csv(out / "design_default.csv")) == 36


def test_simulate_then_estimate_is_reproducible(out: Path, small_run: Path):
    simulate = ["simulate", "--config", str(small_run), "--model", "MNL1", "--out", str(out)]
    estimate = ["estimate", "--model", "MNL1", "--data", str(out / "simulated_MNL1.csv"), "--out", str(out)]

    assert main(simulate) == EXIT_OK
    assert main(estimate) == EXIT_OK
    first = (out / "estimate_MNL1.json").read_bytes()
    assert main(simulate) == EXIT_OK
    assert main(estimate) == EXIT_OK

    assert (out / "estimate_MNL1.json").read_bytes() == first
    result = json.loads(first)["result"]
    assert result["spec_name"] == "MNL1"
    assert result["n_respondents"] <= 60


def test_estimate_with_too_few_respondents_exits_with_data_status(tmp_path: Path, out: Path):
    data = tmp_path / "one.csv"
    data.write_text(
        "respondent_id,block,scenario,dt,wt,bill,pct_increase,choice\nR1,1,1,1,3,100,0.1,1\nR1,1,2,3,1,100,0.5,0\n",
        encoding="utf-8",
    )

    assert main(["estimate", "--model", "MNL1", "--data", str(data), "--out", str(out)]) == EXIT_DATA


def test_estimate_without_data_is_a_usage_error(out: Path):
    assert main(["estimate", "--model", "MNL1", "--out", str(out)]) == EXIT_USAGE


def test_unknown_config_key_exits_with_usage_status(tmp_path: Path, out: Path):
    config = tmp_path / "bad.toml"
    config.write_text("unknown_key = 1\n", encoding="utf-8")

    assert main(["report", "--config", str(config), "--out", str(out)]) == EXIT_USAGE


def test_missing_design_file_exits_with_usage_status(tmp_path: Path, out: Path):
    assert main(["design-eval", "--design", str(tmp_path / "absent.csv"), "--out", str(out)]) == EXIT_USAGE


@pytest.mark.parametrize("argv", [["report", "--unit", "weekly"], ["calibrate"], ["dcf", "--model", "ML9"]])
def test_bad_arguments_exit_with_usage_status(argv):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == EXIT_USAGE


def test_numerical_failures_exit_with_numerical_status(out: Path, mocker):
    def diverging(config, writer):
        raise EstimationException("objective diverged")

    mocker.patch.dict(COMMANDS, {"report": diverging})

    assert main(["report", "--out", str(out)]) == EXIT_NUMERICAL


@pytest.mark.parametrize(
    "argv, table, artifact",
    [
        (["dcf", "--model", "MNL1"], "dcf_MNL1_ch0.csv", "dcf_MNL1_ch0.json"),
        (["design-eval"], "design_default.csv", "design_eval.json"),
        (["report", "--model", "MNL1"], "report.txt", "report.json"),
    ],
)
def test_tabular_outputs_carry_config_and_input_hash(out: Path, argv, table, artifact):
    assert main(argv + ["--out", str(out)]) == EXIT_OK

    meta = read_json(out / f"{table}.meta.json")
    assert meta["file"] == table
    assert meta["file_sha256"] == hashlib.sha256((out / table).read_bytes()).hexdigest()
    assert meta["config"] == read_json(out / artifact)["config"]
    assert meta["input_hash"] == read_json(out / artifact)["input_hash"]


def test_simulated_data_and_exclusions_are_stamped(out: Path, small_run: Path):
    assert main(["simulate", "--config", str(small_run), "--model", "MNL1", "--out", str(out)]) == EXIT_OK
    data = out / "simulated_MNL1.csv"
    assert read_json(out / "simulated_MNL1.csv.meta.json")["command"] == "simulate"

    assert main(["estimate", "--model", "MNL1", "--data", str(data), "--out", str(out)]) == EXIT_OK

    # at a purchase share near 0.3 some of the 60 respondents always wait
    meta = read_json(out / "excluded_respondents.txt.meta.json")
    assert meta["input_hash"] == hashlib.sha256(data.read_bytes()).hexdigest()
