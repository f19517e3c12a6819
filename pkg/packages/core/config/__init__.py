"""Configuration package initialization.

Call init_settings() at application startup so environment overrides and
run tolerances are in place before any computation. The run-configuration
schema and its YAML loader live in ``run_config`` and ``loader``; they
depend on the domain models and are imported from there directly.
"""

from .config import Settings, Tolerances, get_settings, init_settings, resolve_tolerances

__all__ = [
    "Settings",
    "Tolerances",
    "get_settings",
    "init_settings",
    "resolve_tolerances",
]
