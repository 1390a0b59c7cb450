# -*- coding: utf-8 -*-
"""Testes da CLI e da resolução de configuração"""

import json

import numpy as np
import pandas as pd
import pytest

from config import get_config
from config.config import load_experiment_config, optimizer_config, protocol_config, tolerance_config
from main import main
from utils.file_handlers.report_writer import FileHandler
from utils.states.density import DensityOperator, SystemLayout

def test_catalysis_demo_exact(tmp_path):
    out = tmp_path / "demo.csv"
    code = main(["catalysis-demo", "--d", "2", "--n", "3", "--seed", "7", "--epsilon", "0", "--out", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["trial", "n", "d", "eps_in", "dist_out", "ratio",
                                   "cr_in", "cr_out", "cf_in", "cf_out", "pass"]
    assert frame["dist_out"].iloc[0] <= 1e-10

def test_catalysis_demo_beyond_dense_scale(tmp_path):
    out = tmp_path / "demo.csv"
    code = main(["catalysis-demo", "--d", "3", "--n", "5", "--seed", "7", "--epsilon", "0", "--out", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    assert frame["d"].iloc[0] == 3 and frame["n"].iloc[0] == 5
    assert frame["dist_out"].iloc[0] <= 1e-10

def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (first, second):
        assert main(["assisted", "--trials", "3", "--seed", "11", "--out", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()

def test_json_report_embeds_config(tmp_path):
    out = tmp_path / "iqsm.json"
    assert main(["iqsm", "--trials", "2", "--seed", "3", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload["config"]["command"] == "iqsm"
    assert payload["config"]["trials"] == 2
    assert len(payload["rows"]) == 2

def test_rates_on_incoherent_state(tmp_path):
    state = FileHandler.save_state(
        DensityOperator(SystemLayout.single("S", 2), np.diag([0.4, 0.6])), tmp_path / "s.json"
    )
    out = tmp_path / "rates.csv"
    assert main(["rates", "--state-file", str(state), "--out", str(out)]) == 0
    frame = pd.read_csv(out)
    assert (frame["value"].abs() <= 1e-12).all()

def test_malformed_flag_exits_with_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["catalysis-demo", "--bogus"])
    assert excinfo.value.code == 1

def test_unknown_command_exits_with_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main(["teleport"])
    assert excinfo.value.code == 1

@pytest.mark.parametrize("flags", [["--n", "9"], ["--d", "1"], ["--trials", "0"], ["--epsilon", "-0.1"]])
def test_invalid_config_exits_one(flags):
    assert main(["catalysis-demo"] + flags) == 1

def test_catalysis_dimension_limit():
    assert main(["catalysis-demo", "--d", "5"]) == 1

def test_job_error_exits_one(tmp_path):
    assert main(["rates", "--state-file", str(tmp_path / "missing.json"), "--out", str(tmp_path / "r.csv")]) == 1

def test_seed_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("COHCAT_SEED", "42")
    assert load_experiment_config({"command": "assisted"}).seed == 42

    config_file = tmp_path / "config.json"
    config_file.write_text(json.dumps({"command": "assisted", "seed": 5, "trials": 2}), encoding="utf-8")
    assert load_experiment_config({"command": "assisted"}, config_file).seed == 5
    assert load_experiment_config({"command": "assisted", "seed": 9, "trials": None}, config_file).trials == 2
    assert load_experiment_config({"command": "assisted", "seed": 9}, config_file).seed == 9

def test_invalid_env_seed(monkeypatch):
    monkeypatch.setenv("COHCAT_SEED", "abc")
    with pytest.raises(ValueError):
        load_experiment_config({"command": "assisted"})

def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_experiment_config({"command": "assisted"}, tmp_path / "nope.json")

def test_get_config():
    assert get_config("tolerance") is tolerance_config
    assert get_config("Optimizer") is optimizer_config
    assert get_config("protocol") is protocol_config
    assert "pass" in get_config("report").catalysis_columns
    with pytest.raises(ValueError):
        get_config("database")
