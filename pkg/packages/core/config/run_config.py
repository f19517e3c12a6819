"""Schema of a batch run configuration document.

Every section forbids unknown keys, so typos surface as field-level
validation errors before anything is computed.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..evolution.channel import ChannelParams
from ..utils.numbers import ComplexNumber
from .config import Tolerances

StateKind = Literal["coherent", "fock", "cat", "thermal", "file"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class StateSection(_Section):
    """Initial cavity state."""

    kind: StateKind = Field(default="coherent", description="State family")
    dim: int = Field(default=64, ge=1, le=512, description="Fock truncation dimension")
    alpha0: ComplexNumber = Field(default=0j, description="Amplitude of coherent/cat states")
    sign: Literal[1, -1] = Field(default=1, description="Cat parity (+1 even, -1 odd)")
    n: int = Field(default=0, ge=0, description="Photon number of a Fock state")
    nbar: float = Field(default=0.0, ge=0.0, description="Mean photon number of a thermal state")
    path: Optional[str] = Field(default=None, description="Density-matrix file for kind=file")

    @model_validator(mode="after")
    def _check_kind(self) -> "StateSection":
        if self.kind == "file" and not self.path:
            raise ValueError("state.path is required when state.kind is 'file'")
        if self.kind == "fock" and self.n >= self.dim:
            raise ValueError(f"state.n={self.n} does not fit in dim={self.dim}")
        return self


class DriveSection(_Section):
    """Resonant drive applied during the channel evolution."""

    alpha: ComplexNumber = Field(default=0j, description="Drive amplitude (1/time)")
    t_drive: Optional[float] = Field(
        default=None,
        gt=0.0,
        description="Drive duration used to report the alpha behind each beta (default channel.t)",
    )


class EvolutionSection(_Section):
    method: Literal["closed_form", "numerical", "both"] = Field(default="both")
    steps: Optional[int] = Field(default=None, ge=1, description="RK4 steps (default automatic)")


class GridSection(_Section):
    """Rectangular phase-space grid, both ends inclusive."""

    x_min: float = -3.0
    x_max: float = 3.0
    y_min: float = -3.0
    y_max: float = 3.0
    step: float = Field(default=0.3, gt=0.0)

    @model_validator(mode="after")
    def _ordered(self) -> "GridSection":
        if self.x_max < self.x_min or self.y_max < self.y_min:
            raise ValueError("grid bounds must satisfy x_min <= x_max and y_min <= y_max")
        return self


class QuasiprobSection(_Section):
    s: float = Field(default=0.0, ge=-1.0, lt=1.0, description="Order parameter")
    grid: Optional[GridSection] = Field(default_factory=GridSection)
    points: list[ComplexNumber] = Field(
        default_factory=list, description="Explicit beta points, used instead of the grid if set"
    )
    m_max: Optional[int] = Field(
        default=None, ge=1, description="Weighted-series length (default adaptive)"
    )


class ProbeSection(_Section):
    lambda_coupling: float = Field(default=1.0, gt=0.0, description="Atom-field coupling")
    n_samples: int = Field(default=256, ge=1)
    m_max: int = Field(default=20, ge=1)
    beta: ComplexNumber = Field(default=0j, description="Displacement before the decay")
    noise_amplitude: float = Field(default=0.0, ge=0.0, description="Signal noise (0 = off)")


class OutputSection(_Section):
    directory: str = Field(default="results")
    oracle_table: bool = Field(default=True, description="Write quasiprob_direct values too")
    verify_report: bool = Field(default=True, description="Write verify_report.csv")


class RunConfig(_Section):
    """A complete, reproducible batch run."""

    state: StateSection = Field(default_factory=StateSection)
    channel: ChannelParams = Field(default_factory=ChannelParams)
    drive: DriveSection = Field(default_factory=DriveSection)
    evolution: EvolutionSection = Field(default_factory=EvolutionSection)
    quasiprob: QuasiprobSection = Field(default_factory=QuasiprobSection)
    probe: Optional[ProbeSection] = None
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output: OutputSection = Field(default_factory=OutputSection)
    seed: Optional[int] = Field(default=None, ge=0, lt=2**64, description="Noise seed")
    threads: int = Field(default=0, ge=0, description="Worker threads (0 = auto)")

    def with_overrides(
        self,
        out: Optional[str] = None,
        threads: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> "RunConfig":
        """Apply command-line overrides; validation runs again on the result."""
        data = self.model_dump(mode="json")
        if out is not None:
            data["output"]["directory"] = out
        if threads is not None:
            data["threads"] = threads
        if seed is not None:
            data["seed"] = seed
        return RunConfig.model_validate(data)
