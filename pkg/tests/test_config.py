"""Tests for netcorr.config (YAML loading, defaults, RunConfig)."""

from pathlib import Path

import pytest

from context import netcorr  # noqa: F401
from netcorr.config import DEFAULT_KEYS, RunConfig, build_run_config, load_yaml_config, parse_defaults


class TestLoadYamlConfig:
    def test_loads_valid_yaml(self, tmp_path):
        path = tmp_path / "netcorr.yaml"
        path.write_text("k: 0.25\nseed: 7\n")
        assert load_yaml_config(path) == {"k": 0.25, "seed": 7}

    def test_empty_file_returns_empty_dict(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_yaml_config(path) == {}

    def test_missing_file_exit_by_default(self):
        with pytest.raises(SystemExit):
            load_yaml_config("/nonexistent/path.yaml")

    def test_missing_file_raise_mode(self):
        with pytest.raises(FileNotFoundError):
            load_yaml_config("/nonexistent/path.yaml", on_missing="raise")

    def test_missing_file_empty_mode(self):
        assert load_yaml_config("/nonexistent/path.yaml", on_missing="empty") == {}

    def test_none_path_empty_mode(self):
        assert load_yaml_config(None, on_missing="empty") == {}

    def test_non_mapping_rejected(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- a\n- b\n")
        with pytest.raises(ValueError, match="mapping"):
            load_yaml_config(path)

    def test_malformed_yaml_rejected(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("k: [1, 2\n")
        with pytest.raises(ValueError, match="parsing YAML"):
            load_yaml_config(path)


class TestParseDefaults:
    def test_empty_gives_builtins(self):
        assert parse_defaults({}) == DEFAULT_KEYS

    def test_overrides_and_coerces(self):
        merged = parse_defaults({"k": "0.25", "trials": 10, "family": "path"})
        assert merged["k"] == 0.25
        assert merged["trials"] == 10
        assert merged["family"] == "path"
        assert merged["seed"] == DEFAULT_KEYS["seed"]

    def test_unknown_key(self):
        with pytest.raises(ValueError, match="Unknown config key"):
            parse_defaults({"graph": "g.txt"})

    @pytest.mark.parametrize("key,value", [("k", 0), ("tolerance", -1e-9), ("trials", 0), ("workers", 0)])
    def test_non_positive_rejected(self, key, value):
        with pytest.raises(ValueError, match="must be > 0"):
            parse_defaults({key: value})

    def test_bad_metric(self):
        with pytest.raises(ValueError, match="metric"):
            parse_defaults({"metric": "cosine"})

    @pytest.mark.parametrize(
        "key,value",
        [("trials", 2.7), ("n_max", "12.5"), ("k", True), ("seed", False), ("workers", True)],
    )
    def test_no_silent_rounding_or_bools(self, key, value):
        with pytest.raises(ValueError, match="Bad config value"):
            parse_defaults({key: value})

    def test_integral_values_accepted_exactly(self):
        merged = parse_defaults({"trials": 3.0, "n_min": "6", "seed": 2**63 + 1})
        assert merged["trials"] == 3 and isinstance(merged["trials"], int)
        assert merged["n_min"] == 6
        assert merged["seed"] == 2**63 + 1

    def test_uncoercible_value(self):
        with pytest.raises(ValueError, match="Bad config value"):
            parse_defaults({"seed": "seven"})


class TestRunConfig:
    def test_validate_defaults(self):
        cfg = RunConfig(command="validate", graph=Path("g.txt"))
        assert cfg.metric == "resistance"
        assert cfg.k == 1.0
        assert cfg.tolerance == 1e-9

    @pytest.mark.parametrize(
        "kwargs,message",
        [
            (dict(command="validate"), "needs --graph"),
            (dict(command="corr", graph=Path("g"), x=Path("x")), "--x and --y"),
            (dict(command="validate", graph=Path("g"), metric="embedding"), "exactly one"),
            (dict(command="validate", graph=Path("g"), metric="embedding", commute_time=True,
                  embedding=Path("z")), "exactly one"),
            (dict(command="validate", graph=Path("g"), commute_time=True), "only apply"),
            (dict(command="validate", graph=Path("g"), metric="external"), "--weights"),
            (dict(command="validate", graph=Path("g"), metric="identity", k_sweep=True), "--k-sweep"),
            (dict(command="validate", graph=Path("g"), k=0.0), "k must be > 0"),
            (dict(command="scan", trials=0), "trials"),
            (dict(command="plot"), "unknown command"),
        ],
    )
    def test_problems(self, kwargs, message):
        with pytest.raises(ValueError, match=message):
            RunConfig(**kwargs)

    def test_problems_are_collected(self):
        with pytest.raises(ValueError) as info:
            RunConfig(command="corr", k=0.0)
        assert "k must be > 0" in str(info.value)
        assert "corr needs --graph" in str(info.value)
        assert "--x and --y" in str(info.value)

    def test_scan_needs_no_graph(self):
        assert RunConfig(command="scan").graph is None

    def test_report_items_for_scan_omit_workers_and_output(self):
        cfg = RunConfig(command="scan", workers=4, output=Path("out.txt"))
        keys = [k for k, _ in cfg.report_items()]
        assert "workers" not in keys and "output" not in keys
        assert keys[:3] == ["command", "k", "tolerance"]
        assert "seed" in keys

    def test_report_items_for_corr(self):
        cfg = RunConfig(command="corr", graph=Path("g"), x=Path("x"), y=Path("y"), metric="identity")
        assert [k for k, _ in cfg.report_items()] == [
            "command", "graph", "metric", "k", "tolerance", "x", "y", "unsafe_override",
        ]


class TestBuildRunConfig:
    def test_cli_overrides_yaml_overrides_builtins(self):
        defaults = parse_defaults({"k": 0.5, "seed": 3})
        cfg = build_run_config({"command": "scan", "k": 0.25, "seed": None, "verbose": True}, defaults)
        assert cfg.k == 0.25
        assert cfg.seed == 3
        assert cfg.trials == DEFAULT_KEYS["trials"]

    def test_invalid_result_raises(self):
        with pytest.raises(ValueError, match="k must be > 0"):
            build_run_config({"command": "scan", "k": -1.0}, parse_defaults({}))
