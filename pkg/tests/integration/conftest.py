"""Integration test fixtures and configuration."""

import logging

import pytest

from packages.core.config.config import Tolerances


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers", "integration: acceptance scenarios over full grids (slower)"
    )


@pytest.fixture(scope="module")
def acceptance_tolerances():
    """Default contracts, shared by the scenarios of a module."""
    return Tolerances()


@pytest.fixture(autouse=True)
def restore_root_logger():
    """Commands invoked through CliRunner reconfigure the root logger; put it back."""
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
