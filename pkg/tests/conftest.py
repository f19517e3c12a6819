"""Pytest configuration and shared fixtures."""

import math
import os

import pytest

from packages.core.config import config as config_module
from packages.core.config.config import Tolerances
from packages.core.evolution.channel import ChannelParams
from packages.core.fock.states import cat_state, fock_state


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Keep CAVITY_RECON_* variables and settings from other tests out of each test."""
    for key in list(os.environ):
        if key.upper().startswith("CAVITY_RECON_"):
            monkeypatch.delenv(key)
    monkeypatch.setattr(config_module, "_settings", None)


@pytest.fixture
def tolerances():
    """Default numerical contracts."""
    return Tolerances()


@pytest.fixture
def leaky_tolerances():
    """Contracts that let mass leave the truncation, for comparing retained entries."""
    return Tolerances(truncation=1.0)


@pytest.fixture
def channel():
    """The reference channel: gamma*t = 0.1, nbar = 0.2."""
    return ChannelParams(gamma=1.0, nbar=0.2, t=0.1)


@pytest.fixture
def divergent_channel():
    """gamma*t = ln 2, nbar = 1, where chi(s=0) = 5 and the weighted series diverges."""
    return ChannelParams(gamma=1.0, nbar=1.0, t=math.log(2.0))


@pytest.fixture
def vacuum():
    """Vacuum state on 32 photon numbers."""
    return fock_state(0, 32)


@pytest.fixture
def even_cat():
    """Even cat state with alpha0 = 1.5 on 64 photon numbers."""
    return cat_state(1.5, 1, 64)


@pytest.fixture
def sample_config(tmp_path):
    """Minimal run configuration writing into a temporary directory."""
    return {
        "state": {"kind": "fock", "n": 0, "dim": 16},
        "channel": {"gamma": 1.0, "nbar": 0.2, "t": 0.1},
        "quasiprob": {"s": 0.0, "points": [[0.0, 0.0], [0.5, -0.5]]},
        "output": {"directory": str(tmp_path / "out")},
        "threads": 1,
    }
