"""Atomic-inversion probe: signal model, Fourier inversion and measurement chain."""

from .atom_probe import (
    ProbeSpec,
    ProbeSignal,
    inversion_signal,
    invert_fourier,
    add_measurement_noise,
    strong_coupling_check,
)
from .chain import ProbeMeasurement, measure_photon_statistics, reconstruct_point_from_probe
from .storage import write_signal, write_distribution

__all__ = [
    "ProbeSpec",
    "ProbeSignal",
    "inversion_signal",
    "invert_fourier",
    "add_measurement_noise",
    "strong_coupling_check",
    "ProbeMeasurement",
    "measure_photon_statistics",
    "reconstruct_point_from_probe",
    "write_signal",
    "write_distribution",
]
