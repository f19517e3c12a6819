"""Tests for channel coefficients and the superoperator algebra."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from packages.core.evolution.channel import ChannelParams, channel_coefficients
from packages.core.evolution.superoperators import (
    commutation_residuals,
    exp_shift_series,
    j_minus,
    j_plus,
    j_three,
    j_three_power,
)


def test_coefficients_at_time_zero():
    """Test the channel is the identity at t = 0."""
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=0.7, t=0.0))

    assert c.N_t == 0.0
    assert c.Gamma_n == 0.0
    assert c.Gamma_n1 == 0.0
    assert c.x3 == 1.0
    assert c.exp_gt == 1.0


def test_coefficients_exact_fractions(divergent_channel):
    """Test gamma*t = ln 2, nbar = 1 gives N = 1/2, Gamma_n = 1/3, Gamma_n1 = 2/3."""
    c = channel_coefficients(divergent_channel)

    assert c.exp_gt == pytest.approx(0.5, abs=1e-15)
    assert c.N_t == pytest.approx(0.5, abs=1e-15)
    assert c.Gamma_n == pytest.approx(1.0 / 3.0, abs=1e-15)
    assert c.Gamma_n1 == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert c.x3 == pytest.approx(math.sqrt(0.5) / 1.5, abs=1e-15)


def test_channel_params_validation():
    """Test negative and unknown parameters are rejected."""
    with pytest.raises(ValidationError):
        ChannelParams(gamma=-1.0)

    with pytest.raises(ValidationError):
        ChannelParams(gamma=1.0, kappa=2.0)


def test_gamma_t():
    """Test the dimensionless decay time."""
    assert ChannelParams(gamma=2.0, nbar=0.0, t=0.25).gamma_t == 0.5


def test_ladder_superoperators_on_fock_projector():
    """Test J- and J+ move |n><n| by one photon with weight n."""
    x = np.zeros((4, 4))
    x[2, 2] = 1.0

    assert j_minus(x)[1, 1] == pytest.approx(2.0)
    assert j_plus(x)[3, 3] == pytest.approx(3.0)
    assert j_three(x)[2, 2] == 5.0


def test_j_plus_drops_weight_past_cutoff():
    """Test J+ on the top level leaves nothing inside the truncation."""
    x = np.zeros((3, 3))
    x[2, 2] = 1.0

    assert np.all(j_plus(x) == 0.0)


def test_j_three_power():
    """Test base^J3 scales entry (m, k) by base^(m+k+1)."""
    x = np.ones((3, 3))
    out = j_three_power(x, 0.5)

    assert out[0, 0] == pytest.approx(0.5)
    assert out[1, 2] == pytest.approx(0.5**4)


def test_j_three_power_scale_does_not_overflow():
    """Test a huge prefactor against a tiny base stays finite."""
    x = np.ones((2, 2))
    out = j_three_power(x, math.exp(-500.0), log_scale=500.0)

    assert out[0, 0] == pytest.approx(1.0)
    assert out[0, 1] == pytest.approx(math.exp(-500.0), rel=1e-9)


def test_exp_shift_series_zero_coefficient():
    """Test exp(0 J) is the identity and counts a single term."""
    x = np.eye(3)
    total, terms = exp_shift_series(x, 0.0, j_minus)

    assert np.array_equal(total, x)
    assert terms == 1


def test_exp_shift_series_on_one_photon():
    """Test exp(c J-)|1><1| = |1><1| + c|0><0|."""
    x = np.zeros((3, 3))
    x[1, 1] = 1.0
    total, _ = exp_shift_series(x, 0.25, j_minus)

    assert total[0, 0] == pytest.approx(0.25)
    assert total[1, 1] == pytest.approx(1.0)


def test_commutation_relations_on_random_hermitian():
    """Test [J-,J+] = J3 and [J3,J+-] = +-2 J+- to machine precision."""
    rng = np.random.default_rng(7)
    for _ in range(5):
        x = rng.standard_normal((12, 12)) + 1j * rng.standard_normal((12, 12))
        residuals = commutation_residuals(x + x.conj().T)

        assert max(residuals) < 1e-12
