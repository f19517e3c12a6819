"""Tests for the closed-form thermal channel."""

import math

import numpy as np
import pytest

from packages.core.evolution.channel import ChannelParams, channel_coefficients
from packages.core.evolution.closed_form import evolve_channel, evolve_closed_form
from packages.core.evolution.integrator import evolve_numerical
from packages.core.fock.metrics import trace_distance, validate_state
from packages.core.fock.states import coherent_state, fock_state, thermal_state
from packages.core.utils.errors import TruncationError


def test_time_zero_is_identity(even_cat):
    """Test the channel at t = 0 returns the input."""
    out = evolve_channel(even_cat, ChannelParams(gamma=1.0, nbar=0.3, t=0.0))

    assert np.allclose(out.entries, even_cat.entries, atol=1e-15)


def test_pure_loss_fock_is_binomial():
    """Test |n> under zero-temperature loss against the Kraus-operator result."""
    eta = math.exp(-0.5)
    out = evolve_channel(fock_state(4, 16), ChannelParams(gamma=1.0, nbar=0.0, t=0.5))
    expected = [math.comb(4, m) * eta**m * (1.0 - eta) ** (4 - m) for m in range(5)]

    assert np.allclose(out.diagonal[:5], expected, atol=1e-12)
    assert np.allclose(out.diagonal[5:], 0.0, atol=1e-15)


def test_pure_loss_keeps_coherent_states_coherent():
    """Test |a> decays to |a e^{-gamma t/2}> at zero temperature."""
    out = evolve_channel(coherent_state(1.0, 32), ChannelParams(gamma=1.0, nbar=0.0, t=0.5))
    expected = coherent_state(math.exp(-0.25), 32)

    assert np.allclose(out.entries, expected.entries, atol=1e-10)


def test_thermal_state_is_stationary():
    """Test the thermal state of the environment is a fixed point."""
    rho = thermal_state(0.5, 64)
    out = evolve_channel(rho, ChannelParams(gamma=1.0, nbar=0.5, t=0.7))

    assert np.allclose(out.entries, rho.entries, atol=1e-12)


def test_long_times_relax_to_thermal():
    """Test any state reaches the thermal state by gamma*t = 20."""
    out = evolve_channel(fock_state(3, 64), ChannelParams(gamma=1.0, nbar=1.0, t=20.0))

    assert trace_distance(out, thermal_state(1.0, 64)) < 1e-5


def test_closed_form_matches_integrator():
    """Test the closed form against the RK4 integrator."""
    p = ChannelParams(gamma=1.0, nbar=0.2, t=0.3)
    rho = coherent_state(0.5, 20)

    assert trace_distance(evolve_channel(rho, p), evolve_numerical(rho, p)) < 1e-6


def test_output_is_a_valid_state(even_cat, channel):
    """Test the evolved state passes validation."""
    out = evolve_channel(even_cat, channel)

    assert validate_state(out).is_valid


def test_mass_pushed_past_cutoff():
    """Test heating near the cut-off raises a truncation error."""
    with pytest.raises(TruncationError) as exc_info:
        evolve_channel(fock_state(7, 8), ChannelParams(gamma=1.0, nbar=1.0, t=5.0))

    assert exc_info.value.operation == "evolve_closed_form"


def test_leaked_mass_recorded(leaky_tolerances):
    """Test tolerated leaks are added to tail_mass_bound."""
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=1.0, t=5.0))
    out = evolve_closed_form(fock_state(7, 8), c, tolerances=leaky_tolerances)

    assert out.tail_mass_bound > 1e-6
    assert out.tail_mass_bound == pytest.approx(1.0 - out.trace, abs=1e-12)


@pytest.mark.parametrize("nbar", [0.0, 0.3])
def test_semigroup(even_cat, nbar):
    """Test evolving for t1 then t2 equals evolving for t1 + t2."""
    stepwise = evolve_channel(
        evolve_channel(even_cat, ChannelParams(gamma=1.0, nbar=nbar, t=0.2)),
        ChannelParams(gamma=1.0, nbar=nbar, t=0.3),
    )
    direct = evolve_channel(even_cat, ChannelParams(gamma=1.0, nbar=nbar, t=0.5))

    assert np.max(np.abs(stepwise.entries - direct.entries)) < 1e-12
    assert trace_distance(stepwise, direct) < 1e-12


def test_long_times_empty_the_field():
    """Test pure loss at gamma*t = 1000 leaves the vacuum with finite entries."""
    out = evolve_channel(fock_state(2, 16), ChannelParams(gamma=1.0, nbar=0.0, t=1000.0))

    assert np.all(np.isfinite(out.entries))
    assert out.diagonal[0] == pytest.approx(1.0, abs=1e-12)
