"""Tests for the RK4 integrator and the drive factorization."""

import math

import numpy as np
import pytest

from packages.core.evolution.channel import ChannelParams
from packages.core.evolution.drive import (
    DriveSpec,
    drive_amplitude,
    effective_displacement,
    factorized_evolution,
)
from packages.core.evolution.integrator import (
    default_steps,
    evolve_numerical,
    integrate_master_equation,
)
from packages.core.fock.metrics import trace_distance
from packages.core.fock.states import cat_state, coherent_state, fock_state
from packages.core.utils.errors import DomainError


def test_default_steps():
    """Test the automatic step count."""
    assert default_steps(ChannelParams(gamma=1.0, nbar=0.0, t=0.0), 0.0, 10) == 0
    assert default_steps(ChannelParams(gamma=0.0, nbar=0.0, t=1.0), 0.0, 10) == 1
    # gamma*dt = 1e-3 is the binding limit here
    assert default_steps(ChannelParams(gamma=1.0, nbar=0.0, t=1.0), 0.0, 10) == 1000


def test_integrate_zero_time(vacuum):
    """Test t = 0 returns the input without stepping."""
    result = integrate_master_equation(vacuum, ChannelParams(gamma=1.0, nbar=0.1, t=0.0))

    assert result.steps == 0
    assert result.state is vacuum


def test_integrate_negative_steps(vacuum, channel):
    """Test a negative step count is rejected."""
    with pytest.raises(DomainError):
        integrate_master_equation(vacuum, channel, steps=-1)


def test_integration_diagnostics(channel):
    """Test the integrator reports its step and trace drift."""
    result = integrate_master_equation(fock_state(2, 12), channel, steps=200)

    assert result.steps == 200
    assert result.dt == pytest.approx(channel.t / 200)
    assert result.trace_drift < 1e-12
    assert result.state.trace == pytest.approx(1.0, abs=1e-12)


def test_free_drive_displaces_vacuum():
    """Test a drive without decay moves <a> to -alpha t."""
    p = ChannelParams(gamma=0.0, nbar=0.0, t=1.0)
    out = evolve_numerical(fock_state(0, 24), p, alpha=0.3, steps=400)

    assert trace_distance(out, coherent_state(-0.3, 24)) < 1e-7


def test_effective_displacement():
    """Test beta for driving with and without decay."""
    assert effective_displacement(0.5, 0.0, 2.0) == pytest.approx(1.0)
    assert effective_displacement(0.5, 1.0, 1.0) == pytest.approx(math.expm1(0.5))
    assert effective_displacement(0.5j, 2.0, 1.0) == pytest.approx(0.5j * math.expm1(1.0))


def test_effective_displacement_rejects_negative_time():
    """Test negative drive durations."""
    with pytest.raises(DomainError):
        effective_displacement(0.5, 1.0, -1.0)


def test_drive_amplitude_inverts_displacement():
    """Test the alpha behind a target beta."""
    beta = 0.7 - 0.2j
    for gamma in (0.0, 0.5, 2.0):
        alpha = drive_amplitude(beta, gamma, 1.3)
        assert effective_displacement(alpha, gamma, 1.3) == pytest.approx(beta)


def test_drive_amplitude_needs_positive_time():
    """Test no drive displaces in zero time."""
    with pytest.raises(DomainError):
        drive_amplitude(1.0, 1.0, 0.0)


def test_drive_spec():
    """Test DriveSpec derives beta and realizes a target beta."""
    spec = DriveSpec.for_beta(1.0 + 1.0j, gamma=1.0, t_drive=0.5)

    assert spec.beta == pytest.approx(1.0 + 1.0j)
    assert DriveSpec(alpha=[0.5, 0.0], gamma=0.0, t_drive=2.0).beta == pytest.approx(1.0)


@pytest.mark.parametrize("nbar", [0.0, 0.2])
def test_factorization_matches_integrator(nbar):
    """Test displacement + closed form against the driven master equation."""
    p = ChannelParams(gamma=1.0, nbar=nbar, t=0.5)
    for rho in (fock_state(0, 30), cat_state(1.0, 1, 30)):
        factorized = factorized_evolution(rho, 0.5, p)
        numerical = evolve_numerical(rho, p, alpha=0.5)

        assert trace_distance(factorized, numerical) < 1e-6


def test_undriven_undamped_is_identity(even_cat):
    """Test gamma = 0 and alpha = 0 leave the state unchanged."""
    out = factorized_evolution(even_cat, 0.0, ChannelParams(gamma=0.0, nbar=0.0, t=3.0))

    assert np.allclose(out.entries, even_cat.entries, atol=1e-15)
