"""YAML density-matrix files.

Layout::

    dim: 2
    entries:            # row-major [re, im] pairs
    - [1.0, 0.0]
    - ...
    tail_mass_bound: 0.0

Floats are written with their shortest round-trip representation, so a
read-back reproduces every entry exactly.
"""

from pathlib import Path
from typing import Any

import numpy as np
import yaml
from pydantic import ValidationError

from ..utils.errors import ConfigurationError, InvalidStateError
from ..utils.logger import get_logger
from .states import FockDensityMatrix

logger = get_logger(__name__)


def state_to_dict(rho: FockDensityMatrix) -> dict[str, Any]:
    flat = rho.entries.reshape(-1)
    return {
        "dim": rho.dim,
        "entries": [[float(z.real), float(z.imag)] for z in flat],
        "tail_mass_bound": float(rho.tail_mass_bound),
    }


def state_from_dict(data: dict[str, Any]) -> FockDensityMatrix:
    try:
        dim = int(data["dim"])
        pairs = np.asarray(data["entries"], dtype=float)
        tail = float(data.get("tail_mass_bound", 0.0))
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigurationError(f"Malformed state document: {e}") from e
    if pairs.shape != (dim * dim, 2):
        raise ConfigurationError(
            f"State document declares dim={dim} but holds {pairs.shape[0]} entries"
        )
    entries = (pairs[:, 0] + 1j * pairs[:, 1]).reshape(dim, dim)
    try:
        return FockDensityMatrix(entries=entries, tail_mass_bound=tail)
    except ValidationError as e:
        raise InvalidStateError(f"State document is not a density matrix: {e}") from e


def save_state(rho: FockDensityMatrix, path: str | Path) -> Path:
    """Write a density matrix to a YAML file.

    Args:
        rho: State to save
        path: Destination file

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        yaml.safe_dump(state_to_dict(rho), f, default_flow_style=None, sort_keys=False)
    logger.info(f"Wrote state dim={rho.dim} to {path}")
    return path


def load_state(path: str | Path) -> FockDensityMatrix:
    """Read a density matrix written by :func:`save_state`.

    Raises:
        FileNotFoundError: If the file doesn't exist
        ConfigurationError: If the document is malformed
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"State file not found: {path}")
    with open(path, "r") as f:
        data = yaml.safe_load(f)
    if not isinstance(data, dict):
        raise ConfigurationError(f"State file {path} is not a mapping")
    return state_from_dict(data)
