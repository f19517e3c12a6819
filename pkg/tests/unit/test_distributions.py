"""Tests for photon distributions and the diagonal transfer map."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from packages.core.evolution.channel import ChannelParams, channel_coefficients
from packages.core.evolution.closed_form import evolve_closed_form
from packages.core.fock.states import FockDensityMatrix, thermal_state
from packages.core.reconstruction.distributions import (
    MAX_PHOTON_INDEX,
    PhotonDistribution,
    evolved_diagonal,
    transfer_matrix,
)
from packages.core.utils.errors import DomainError


def test_clamps_round_off_negatives():
    """Test tiny negative probabilities are set to zero."""
    p = PhotonDistribution(probs=[0.5, -1e-13, 0.5])

    assert p.probs[1] == 0.0
    assert p.trunc == 3
    assert p.total == pytest.approx(1.0)


def test_rejects_negative_probabilities():
    """Test genuinely negative probabilities."""
    with pytest.raises(ValidationError):
        PhotonDistribution(probs=[1.001, -1e-3])


def test_rejects_excess_mass():
    """Test probabilities summing above one."""
    with pytest.raises(ValidationError):
        PhotonDistribution(probs=[0.7, 0.7])


def test_estimated_keeps_negatives():
    """Test measurement estimates are kept as given."""
    p = PhotonDistribution(probs=[1.0, -1e-6], estimated=True)

    assert p.probs[1] == -1e-6


def test_probs_read_only():
    """Test distributions are immutable."""
    p = PhotonDistribution(probs=[1.0])

    with pytest.raises(ValueError):
        p.probs[0] = 0.5


def test_from_state_and_padding():
    """Test the diagonal of a state and zero padding."""
    rho = FockDensityMatrix(entries=np.diag([0.75, 0.25]))
    p = PhotonDistribution.from_state(rho)

    assert np.array_equal(p.padded(4), [0.75, 0.25, 0.0, 0.0])
    assert p.tail_bound == 0.0


def test_transfer_columns_conserve_probability():
    """Test each column of a wide transfer matrix sums to one."""
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=0.2, t=0.1))
    matrix = transfer_matrix(c, 8, 128)

    assert np.allclose(np.sum(matrix, axis=0).astype(float), 1.0, atol=1e-12)


def test_transfer_matrix_bounds():
    """Test output truncations outside [m_in, 512]."""
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=0.2, t=0.1))

    with pytest.raises(DomainError):
        transfer_matrix(c, 8, 4)
    with pytest.raises(DomainError):
        transfer_matrix(c, 8, MAX_PHOTON_INDEX + 1)


def test_pure_loss_is_binomial():
    """Test a photon-number eigenstate under zero-temperature loss."""
    eta = math.exp(-0.3)
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=0.0, t=0.3))
    p = evolved_diagonal(PhotonDistribution(probs=[0.0, 0.0, 0.0, 1.0]), c)
    expected = [math.comb(3, m) * eta**m * (1.0 - eta) ** (3 - m) for m in range(4)]

    assert np.allclose(p.probs, expected, atol=1e-15)


def test_matches_closed_form_diagonal(leaky_tolerances):
    """Test the diagonal map against the full closed-form propagator."""
    rng = np.random.default_rng(3)
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=0.5, t=0.3))
    for _ in range(5):
        probs = rng.dirichlet(np.ones(16))
        rho = FockDensityMatrix(entries=np.diag(probs))
        closed = evolve_closed_form(rho, c, tolerances=leaky_tolerances).diagonal
        mapped = evolved_diagonal(PhotonDistribution(probs=probs), c, 16).probs

        assert np.max(np.abs(closed - mapped)) < 1e-12


def test_pushed_mass_goes_to_tail_bound():
    """Test mass moved beyond m_out is accounted for."""
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=1.0, t=2.0))
    p0 = PhotonDistribution(probs=[0.0, 0.0, 0.0, 1.0], tail_bound=1e-3)
    p = evolved_diagonal(p0, c, 4)

    assert p.tail_bound == pytest.approx(1e-3 + 1.0 - p.total, abs=1e-12)
    assert p.tail_bound > 1e-3


def test_thermal_distribution_is_stationary():
    """Test the thermal photon statistics are a fixed point of the map."""
    rho = thermal_state(0.4, 48)
    c = channel_coefficients(ChannelParams(gamma=1.0, nbar=0.4, t=1.5))
    p = evolved_diagonal(PhotonDistribution.from_state(rho), c, 48)

    assert np.allclose(p.probs, rho.diagonal, atol=1e-12)
