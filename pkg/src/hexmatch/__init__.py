"""Hexagonal matching codes on heavy-hexagon layouts, measured with 2-body
parity checks and simulated under circuit-level Pauli noise."""

from .analysis import ExperimentStats, compute_pW, compute_pZ, experiment_stats, plaquette_outcomes
from .calibration import CalibrationData, calibration_stats, idle_error_probability, load_calibration
from .circuit import CircuitProgram, Instruction, Kind, build_experiment, parity_gadget
from .lattice import (
    CodeSpec,
    LayoutError,
    LayoutSpec,
    Link,
    Plaquette,
    build_code,
    build_heavy_hex_layout,
    build_plaquettes,
    classify_links,
    incident_z_links,
    schedule_shifts,
)
from .noise import NoiseModel, apply_noise_model, strip_noise
from .qasm import export_openqasm, parse_openqasm
from .simulator import ShotTable, SimState, run_shots, statevector_oracle

__version__ = "0.1.0"

__all__ = [
    "ExperimentStats",
    "compute_pW",
    "compute_pZ",
    "experiment_stats",
    "plaquette_outcomes",
    "CalibrationData",
    "calibration_stats",
    "idle_error_probability",
    "load_calibration",
    "CircuitProgram",
    "Instruction",
    "Kind",
    "build_experiment",
    "parity_gadget",
    "CodeSpec",
    "LayoutError",
    "LayoutSpec",
    "Link",
    "Plaquette",
    "build_code",
    "build_heavy_hex_layout",
    "build_plaquettes",
    "classify_links",
    "incident_z_links",
    "schedule_shifts",
    "NoiseModel",
    "apply_noise_model",
    "strip_noise",
    "export_openqasm",
    "parse_openqasm",
    "ShotTable",
    "SimState",
    "run_shots",
    "statevector_oracle",
]
