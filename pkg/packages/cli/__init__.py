"""Command-line front end for cavity-recon."""

from .main import cli
from .runner import (
    RunOutcome,
    build_state,
    cmd_prepare,
    cmd_evolve,
    cmd_reconstruct,
    cmd_probe,
    cmd_verify,
)

__all__ = [
    "cli",
    "RunOutcome",
    "build_state",
    "cmd_prepare",
    "cmd_evolve",
    "cmd_reconstruct",
    "cmd_probe",
    "cmd_verify",
]
