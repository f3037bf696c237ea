"""
Tests for the command-line surface
"""

import json

import numpy as np
import pandas as pd
import pytest

import main as entry
from cli import RunConfig, build_parser, forecast_table, model_label, parse_args
from cli.run_config import parse_bool, parse_float_list
from config.settings import MLP_HIDDEN
from core.exceptions import ConfigurationError, DivergenceError
from core.models import Architecture, HeadKind, ModelSpec, ParametricForecast, PointForecast, QuantileForecast
from engine import Forecaster, build_network
from timeseries.preprocessing import MinMaxScaler


def run(argv, capsys=None):
    code = entry.main([str(a) for a in argv])
    summary = None
    if capsys is not None:
        out = capsys.readouterr().out
        if code == 0 and out.strip():
            summary = json.loads(out)
    return code, summary


class TestRunConfig:
    """Settings layering: defaults < config file < flags"""

    def test_defaults(self):
        config = RunConfig()
        assert config.window == 72
        assert config.horizon == 36
        assert config.resolved_hidden() == 128

    def test_mlp_hidden_default(self):
        config = RunConfig(arch="mlp")
        assert config.resolved_hidden() == MLP_HIDDEN
        spec = config.model_spec(5)
        assert spec.arch is Architecture.MLP
        assert spec.layers == 1

    def test_flags_override_file(self):
        config = RunConfig.from_sources({"seed": "3", "head": "qr"}, {"seed": 5})
        assert config.seed == 5
        assert config.head == "qr"

    def test_dashed_keys(self):
        config = RunConfig.from_sources({"batch-size": "16", "sort-quantiles": "yes"})
        assert config.batch_size == 16
        assert config.sort_quantiles is True

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError):
            RunConfig.from_sources({"widnow": "48"})

    def test_bad_value(self):
        with pytest.raises(ConfigurationError):
            RunConfig.from_sources({"window": "many"})

    def test_from_file(self, temp_dir):
        path = temp_dir / "run.env"
        path.write_text("window = 48\nquantiles = 0.1,0.5,0.9\nhead = qr\n", encoding="utf-8")
        config = RunConfig.from_file(path, {"window": 24})
        assert config.window == 24
        assert config.quantiles == (0.1, 0.5, 0.9)
        assert config.model_spec(3).quantiles == (0.1, 0.5, 0.9)

    def test_quantile_set_needs_median(self):
        config = RunConfig(head="qr", quantiles=(0.1, 0.9))
        with pytest.raises(ConfigurationError):
            config.model_spec(3)

    def test_unknown_head(self):
        with pytest.raises(ConfigurationError):
            RunConfig(head="mle-x").model_spec(3)

    def test_mlp_with_probabilistic_head(self):
        with pytest.raises(ConfigurationError):
            RunConfig(arch="mlp", head="qr").model_spec(3)

    def test_require(self):
        with pytest.raises(ConfigurationError, match="--data"):
            RunConfig().require("data")

    def test_parsers(self):
        assert parse_bool("off") is False
        assert parse_float_list("0.1, 0.5,") == (0.1, 0.5)
        with pytest.raises(ValueError):
            parse_bool("maybe")


class TestParser:
    """Argument parsing"""

    def test_only_given_flags_are_reported(self):
        command, config_file, log_level, flags = parse_args(["train", "--data", "d.csv", "--head", "mle-jsu"])
        assert command == "train"
        assert config_file is None
        assert log_level is None
        assert flags == {"data": "d.csv", "head": "mle-jsu"}

    def test_repeatable_baseline_checkpoint(self):
        _, _, _, flags = parse_args(["eval", "--baseline-checkpoint", "a", "--baseline-checkpoint", "b"])
        assert flags["baseline_checkpoint"] == ["a", "b"]
        assert RunConfig.from_sources(flag_values=flags).baseline_checkpoint == ("a", "b")

    def test_no_ace_guard(self):
        _, _, _, flags = parse_args(["train", "--no-ace-guard"])
        assert flags == {"ace_guard": False}

    def test_rho_alias(self):
        _, _, _, flags = parse_args(["synth", "--rho", "0.5"])
        assert flags == {"cloud_autocorrelation": 0.5}

    def test_every_flag_is_a_setting(self):
        parser = build_parser()
        fields = set(RunConfig.field_names()) | {"config_file", "log_level", "help", "command"}
        for action in parser._subparsers._group_actions[0].choices.values():
            for sub_action in action._actions:
                assert sub_action.dest in fields


class TestLabels:
    """Report row labels and forecast tables"""

    def test_model_label(self):
        assert model_label(ModelSpec()) == "LSTM"
        assert model_label(ModelSpec(head=HeadKind.QUANTILE)) == "LSTM-QR"
        assert model_label(ModelSpec(head=HeadKind.JOHNSON_SB)) == "LSTM-MLE-JSB"
        assert model_label(ModelSpec.mlp_baseline(3)) == "MLP"

    def test_point_table_has_empty_bands(self):
        table = forecast_table(PointForecast(np.ones((1, 4))), lambda v: 100.0 * v)
        assert len(table) == 4
        assert table["point"].tolist() == [100.0] * 4
        assert table["lower90"].isna().all()

    def test_quantile_table_nests(self):
        # crossing raw quantiles are rearranged
        values = np.array([[[0.3, 0.2, 0.5, 0.6, 0.55]]])
        table = forecast_table(QuantileForecast(values, (0.05, 0.25, 0.5, 0.75, 0.95)), None)
        row = table.iloc[0]
        assert row["lower90"] <= row["lower50"] <= row["median"] <= row["upper50"] <= row["upper90"]
        assert "q0.05" in table.columns

    def test_parametric_table(self):
        output = ParametricForecast({"mu": np.zeros((1, 3)), "sigma": np.ones((1, 3))}, "gaussian")
        table = forecast_table(output, None)
        assert table["upper90"].iloc[0] == pytest.approx(1.644854, abs=1e-5)
        assert "sigma" in table.columns

    def test_johnson_sb_table_within_target_range(self):
        spec = ModelSpec(head=HeadKind.JOHNSON_SB, num_features=2, layers=1, hidden=3, window=4, horizon=3, seed=0)
        network = build_network(spec)
        network.head.params["W"][...] = 0.0
        bias = network.head.params["b"].reshape(3, 2)
        # mass pressed against the lower end of the support
        bias[:, 0] = 5.0
        bias[:, 1] = -8.0
        gen = np.random.default_rng(0)
        features = gen.uniform(0.0, 900.0, (20, 2))
        forecaster = Forecaster(
            network,
            MinMaxScaler().fit(features, ("ghi", "temp")),
            MinMaxScaler().fit(np.array([0.0, 900.0]), ("ghi",)),
            ("ghi", "temp"),
        )
        output = forecaster.forecast(features[:4], np.zeros(3))
        table = forecast_table(output, forecaster.to_original)
        for column in ("point", "median", "lower50", "upper50", "lower90", "upper90"):
            assert (table[column] >= 0.0).all(), column
            assert (table[column] <= 900.0).all(), column


class TestCommands:
    """End-to-end runs through main()"""

    def test_synth_is_deterministic(self, temp_dir, capsys):
        code_a, summary = run(["synth", "--years", 1, "--seed", 11, "--out", temp_dir / "a"], capsys)
        code_b, _ = run(["synth", "--years", 1, "--seed", 11, "--out", temp_dir / "b"], capsys)
        assert code_a == code_b == 0
        assert summary["rows"] == 8760
        a = (temp_dir / "a" / "dataset.csv").read_bytes()
        b = (temp_dir / "b" / "dataset.csv").read_bytes()
        assert a == b

    def test_synth_seed_changes_output(self, temp_dir):
        run(["synth", "--years", 1, "--seed", 1, "--out", temp_dir / "a"])
        run(["synth", "--years", 1, "--seed", 2, "--out", temp_dir / "b"])
        assert (temp_dir / "a" / "dataset.csv").read_bytes() != (temp_dir / "b" / "dataset.csv").read_bytes()

    def test_invalid_latitude(self, temp_dir):
        code, _ = run(["synth", "--lat", 120, "--out", temp_dir])
        assert code == 2
        assert not (temp_dir / "dataset.csv").exists()

    def test_usage_error(self):
        code, _ = run(["train", "--head", "mle-x"])
        assert code == 2

    def test_missing_required_setting(self, temp_dir):
        code, _ = run(["train", "--out", temp_dir])
        assert code == 2

    def test_missing_data_file(self, temp_dir):
        code, _ = run(["train", "--data", temp_dir / "absent.csv", "--out", temp_dir])
        assert code == 3

    def test_config_file_unknown_key(self, temp_dir):
        path = temp_dir / "run.env"
        path.write_text("windw = 3\n", encoding="utf-8")
        code, _ = run(["train", "--config", path, "--out", temp_dir])
        assert code == 2

    def test_divergence_exit_code(self, monkeypatch):
        def diverge(name, config):
            raise DivergenceError("diverged", result={})

        monkeypatch.setattr(entry, "run_command", diverge)
        code, _ = run(["train", "--data", "d.csv"])
        assert code == 4


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """synth -> train (QR head) over three small synthetic years"""
    root = tmp_path_factory.mktemp("pipeline")
    data = root / "dataset.csv"
    assert entry.main(["synth", "--years", "3", "--seed", "5", "--out", str(root)]) == 0
    code = entry.main([
        "train", "--data", str(data), "--out", str(root), "--head", "qr", "--window", "24",
        "--horizon", "36", "--layers", "1", "--hidden", "4", "--lr", "0.01", "--batch-size", "64",
        "--max-epochs", "2", "--stride", "24", "--seed", "1",
    ])
    assert code == 0
    return root


class TestPipeline:
    """Train, evaluate and forecast on a small synthetic dataset"""

    def test_train_outputs(self, pipeline):
        assert (pipeline / "model.ckpt").exists()
        log = pd.read_csv(pipeline / "model_training_log.csv")
        assert list(log.columns) == ["epoch", "train_loss", "val_loss", "val_ace"]
        assert len(log) >= 1

    def test_eval(self, pipeline, capsys):
        out = pipeline / "eval"
        code, summary = run([
            "eval", "--checkpoint", pipeline / "model.ckpt", "--data", pipeline / "dataset.csv",
            "--out", out, "--stride", 24, "--baseline", "smart-persistence", "--no-plots",
        ], capsys)
        assert code == 0
        assert summary["figures"] == {}
        table = pd.read_csv(out / "report.csv")
        assert table["model"].tolist() == ["LSTM-QR", "smart persistence"]
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert report["metadata"]["test_year"] == 2018
        qr = report["models"][0]
        assert qr["ace"] is not None
        assert qr["calibration"]["coverages"] == [0.5, 0.9]
        assert len(qr["calibration"]["per_horizon_rmse"]) == 36

    def test_eval_daylight_only(self, pipeline):
        out = pipeline / "eval_day"
        code, _ = run([
            "eval", "--checkpoint", pipeline / "model.ckpt", "--data", pipeline / "dataset.csv",
            "--out", out, "--stride", 24, "--daylight-only", "--no-plots",
        ])
        assert code == 0
        report = json.loads((out / "report.json").read_text(encoding="utf-8"))
        assert report["metadata"]["daylight_only"] is True

    def test_forecast(self, pipeline, capsys):
        out = pipeline / "forecast"
        code, summary = run([
            "forecast", "--checkpoint", pipeline / "model.ckpt", "--data", pipeline / "dataset.csv", "--out", out,
        ], capsys)
        assert code == 0
        assert summary["rows"] == 36
        table = pd.read_csv(out / "forecast.csv")
        assert len(table) == 36
        assert table["horizon_hour"].tolist() == list(range(1, 37))
        assert np.all(table["lower90"] <= table["lower50"])
        assert np.all(table["lower50"] <= table["median"])
        assert np.all(table["median"] <= table["upper50"])
        assert np.all(table["upper50"] <= table["upper90"])

    def test_forecast_from_origin(self, pipeline):
        out = pipeline / "forecast_origin"
        code, _ = run([
            "forecast", "--checkpoint", pipeline / "model.ckpt", "--data", pipeline / "dataset.csv",
            "--out", out, "--origin", "2017-06-21T12:00",
        ])
        assert code == 0
        assert len(pd.read_csv(out / "forecast.csv")) == 36

    def test_forecast_unknown_origin(self, pipeline):
        code, _ = run([
            "forecast", "--checkpoint", pipeline / "model.ckpt", "--data", pipeline / "dataset.csv",
            "--out", pipeline / "bad", "--origin", "1999-01-01T00:00",
        ])
        assert code == 2

    def test_corrupt_checkpoint(self, pipeline, temp_dir):
        broken = temp_dir / "broken.ckpt"
        broken.write_bytes((pipeline / "model.ckpt").read_bytes()[:100])
        code, _ = run(["forecast", "--checkpoint", broken, "--data", pipeline / "dataset.csv", "--out", temp_dir])
        assert code == 3
