"""Tests for settings, tolerances and run configurations."""

import pytest
import yaml
from pydantic import ValidationError

from packages.core.config.config import (
    Settings,
    Tolerances,
    get_settings,
    init_settings,
    resolve_tolerances,
)
from packages.core.config.loader import load_run_config, parse_run_config, save_run_config
from packages.core.config.run_config import RunConfig, StateSection
from packages.core.utils.errors import ConfigurationError


def test_tolerance_defaults():
    """Test the default numerical contracts."""
    tol = Tolerances()

    assert tol.trace == 1e-10
    assert tol.truncation == 1e-6
    assert tol.series_tail == 1e-10
    assert tol.singular_weight == 1e-12
    assert tol.probe_roundtrip == 1e-6


def test_tolerances_reject_unknown_and_non_positive():
    """Test tolerance validation."""
    with pytest.raises(ValidationError):
        Tolerances(trace=0.0)
    with pytest.raises(ValidationError):
        Tolerances(tracee=1e-3)


def test_settings_defaults():
    """Test default settings values."""
    settings = Settings()

    assert settings.app_name == "cavity-recon"
    assert settings.log_level == "INFO"
    assert settings.threads == 0
    assert settings.strong_coupling_ratio == 10.0


def test_settings_from_env(monkeypatch):
    """Test settings from environment variables, nested tolerances included."""
    monkeypatch.setenv("CAVITY_RECON_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("CAVITY_RECON_THREADS", "4")
    monkeypatch.setenv("CAVITY_RECON_TOLERANCES__TRUNCATION", "1e-4")

    settings = Settings()

    assert settings.log_level == "DEBUG"
    assert settings.threads == 4
    assert settings.tolerances.truncation == 1e-4


def test_init_settings_replaces_global():
    """Test init_settings overrides and get_settings returns the same instance."""
    settings = init_settings(threads=2, tolerances=Tolerances(truncation=1e-3))

    assert get_settings() is settings
    assert resolve_tolerances().truncation == 1e-3
    assert resolve_tolerances(Tolerances()).truncation == 1e-6


def test_run_config_defaults():
    """Test a config with every default filled in."""
    config = RunConfig()

    assert config.state.kind == "coherent"
    assert config.state.dim == 64
    assert config.evolution.method == "both"
    assert config.quasiprob.s == 0.0
    assert config.probe is None
    assert config.output.directory == "results"


def test_parse_complex_fields():
    """Test complex values as pairs, numbers and strings."""
    config = parse_run_config(
        {
            "state": {"kind": "cat", "alpha0": [1.5, 0.0], "dim": 32},
            "drive": {"alpha": "0.5+0.5j"},
            "quasiprob": {"points": [[0.0, 1.0], 2.0]},
        }
    )

    assert config.state.alpha0 == 1.5 + 0j
    assert config.drive.alpha == 0.5 + 0.5j
    assert config.quasiprob.points == [1j, 2 + 0j]


def test_parse_empty_document():
    """Test an empty document gives the defaults."""
    assert parse_run_config(None) == RunConfig()


def test_unknown_key_reports_field():
    """Test schema violations name the offending field."""
    with pytest.raises(ConfigurationError) as exc_info:
        parse_run_config({"channel": {"gamma": 1.0, "kappa": 2.0}}, "run.yaml")

    message = str(exc_info.value)
    assert "run.yaml" in message
    assert "channel.kappa" in message


def test_order_parameter_range():
    """Test s must lie in [-1, 1)."""
    with pytest.raises(ConfigurationError) as exc_info:
        parse_run_config({"quasiprob": {"s": 1.0}})

    assert "quasiprob.s" in str(exc_info.value)


def test_file_state_needs_path():
    """Test kind=file without a path."""
    with pytest.raises(ValidationError):
        StateSection(kind="file")


def test_fock_state_must_fit():
    """Test a Fock state larger than the truncation."""
    with pytest.raises(ValidationError):
        StateSection(kind="fock", n=8, dim=8)


def test_top_level_must_be_mapping():
    """Test a list document is rejected."""
    with pytest.raises(ConfigurationError):
        parse_run_config([1, 2, 3])


def test_load_missing_config(tmp_path):
    """Test loading a config file that doesn't exist."""
    with pytest.raises(ConfigurationError):
        load_run_config(tmp_path / "missing.yaml")


def test_load_invalid_yaml(tmp_path):
    """Test a file that is not YAML."""
    path = tmp_path / "bad.yaml"
    path.write_text("state: [unclosed\n")

    with pytest.raises(ConfigurationError):
        load_run_config(path)


def test_save_and_load_round_trip(tmp_path, sample_config):
    """Test the resolved config reads back equal, defaults included."""
    config = parse_run_config(sample_config)
    path = save_run_config(config, tmp_path / "resolved.yaml")

    with open(path) as f:
        document = yaml.safe_load(f)
    assert document["quasiprob"]["points"] == [[0.0, 0.0], [0.5, -0.5]]
    assert document["tolerances"]["truncation"] == 1e-6
    assert load_run_config(path) == config


def test_with_overrides(sample_config):
    """Test command-line overrides."""
    config = parse_run_config(sample_config).with_overrides(out="elsewhere", threads=3, seed=9)

    assert config.output.directory == "elsewhere"
    assert config.threads == 3
    assert config.seed == 9
    assert config.state.dim == 16


def test_seed_range():
    """Test seeds must fit in 64 bits."""
    with pytest.raises(ValidationError):
        RunConfig(seed=2**64)
