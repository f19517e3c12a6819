"""YAML run-configuration loader."""

from pathlib import Path

import yaml
from pydantic import ValidationError

from ..utils.errors import ConfigurationError
from .run_config import RunConfig


def _format_validation_error(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"  {location}: {item['msg']}")
    return "\n".join(lines)


def parse_run_config(data: object, source: str = "<config>") -> RunConfig:
    """Validate a loaded document against the RunConfig schema.

    Raises:
        ConfigurationError: With one line per offending field
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"{source}: top level must be a mapping")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigurationError(
            f"{source}: invalid configuration\n{_format_validation_error(e)}"
        ) from e


def load_run_config(path: str | Path) -> RunConfig:
    """Load a run configuration from a YAML file.

    Args:
        path: Path to YAML configuration file

    Returns:
        Validated RunConfig

    Raises:
        ConfigurationError: If the file is missing, is not valid YAML or
            violates the schema
    """
    path = Path(path)

    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}")

    try:
        with open(path, "r") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"{path}: not valid YAML: {e}") from e

    return parse_run_config(data, str(path))


def save_run_config(config: RunConfig, path: str | Path) -> Path:
    """Save the fully resolved configuration (defaults included) to YAML.

    Args:
        config: RunConfig to save
        path: Path where to save the YAML file

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(
            config.model_dump(mode="json"), f, default_flow_style=False, sort_keys=False
        )
    return path
