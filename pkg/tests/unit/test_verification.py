"""Tests for the acceptance suite and its report."""

import math

import pandas as pd
import pytest

from packages.core.evolution.channel import ChannelParams
from packages.core.evolution.closed_form import evolve_channel
from packages.core.fock.metrics import trace_distance
from packages.core.fock.states import coherent_state, thermal_state
from packages.core.reconstruction import weights
from packages.core.utils.errors import ConfigurationError
from packages.core.verification import (
    CRITERIA,
    CriterionResult,
    VerificationReport,
    run_acceptance_suite,
)
from packages.core.verification.report import REPORT_COLUMNS


def test_criteria_names_are_unique():
    """Test every criterion has its own name."""
    names = [name for name, _ in CRITERIA]

    assert len(names) == 12
    assert len(set(names)) == len(names)


@pytest.mark.parametrize(
    "name",
    [
        "steady_state",
        "exact_weights",
        "pinned_values",
        "binomial_identity",
        "superoperator_algebra",
        "probe_roundtrip",
    ],
)
def test_cheap_criteria_pass(name):
    """Test the fast criteria on a clean checkout."""
    report = run_acceptance_suite(only=[name], threads=1)

    assert [c.name for c in report.criteria] == [name]
    assert report.passed, report.criteria[0].detail


def test_full_suite_passes():
    """Test every criterion passes together, as `cavity-recon verify` runs them."""
    report = run_acceptance_suite(threads=0)

    assert [c.name for c in report.criteria] == [name for name, _ in CRITERIA]
    assert report.passed, [(c.name, c.measured, c.detail) for c in report.failures]


def test_coherent_input_keeps_its_field_at_long_times():
    """Test a coherent amplitude still separates the state from thermal at gamma*t = 20."""
    out = evolve_channel(coherent_state(2.0, 64), ChannelParams(gamma=1.0, nbar=0.0, t=20.0))

    assert trace_distance(out, thermal_state(0.0, 64)) > 1e-5


def test_only_keeps_suite_order():
    """Test a subset runs in suite order, not request order."""
    report = run_acceptance_suite(only=["superoperator_algebra", "binomial_identity"], threads=1)

    assert [c.name for c in report.criteria] == ["binomial_identity", "superoperator_algebra"]


def test_unknown_criterion():
    """Test unknown names are rejected before anything runs."""
    with pytest.raises(ConfigurationError) as exc_info:
        run_acceptance_suite(only=["binomial_identity", "bogus"])

    assert "bogus" in str(exc_info.value)


def test_corrupted_weight_sign_is_caught(mocker):
    """Test flipping the sign of chi makes the pinned-value criterion fail."""
    original = weights._chi

    def flipped(u, c):
        chi, denominator = original(u, c)
        return -chi, denominator

    mocker.patch.object(weights, "_chi", side_effect=flipped)

    report = run_acceptance_suite(only=["pinned_values"], threads=1)

    assert not report.passed
    assert report.failures[0].name == "pinned_values"


def test_raising_criterion_fails_alone(mocker):
    """Test an exception inside one criterion fails only that criterion."""
    from packages.core.verification import suite

    mocker.patch.object(
        suite, "binomial_series_identity_check", side_effect=RuntimeError("broken")
    )

    report = run_acceptance_suite(only=["binomial_identity", "superoperator_algebra"], threads=1)

    failed = report.failures
    assert [c.name for c in failed] == ["binomial_identity"]
    assert failed[0].measured == math.inf
    assert "RuntimeError: broken" in failed[0].detail


def test_report_csv_is_reproducible(tmp_path):
    """Test two runs write byte-identical reports."""
    paths = []
    for run in range(2):
        report = run_acceptance_suite(only=["binomial_identity", "exact_weights"], threads=1)
        paths.append(report.write_csv(tmp_path / f"report{run}.csv"))

    assert paths[0].read_bytes() == paths[1].read_bytes()
    frame = pd.read_csv(paths[0])
    assert list(frame.columns) == REPORT_COLUMNS
    assert frame["passed"].all()


def test_report_properties():
    """Test passed and failures on a hand-built report."""
    report = VerificationReport(
        criteria=[
            CriterionResult(name="a", measured=0.0, tolerance=1.0, passed=True),
            CriterionResult(name="b", measured=2.0, tolerance=1.0, passed=False),
        ]
    )

    assert not report.passed
    assert [c.name for c in report.failures] == ["b"]
    assert VerificationReport().passed
