"""Device benchmarking data and the combined error-probability statistic."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import jsonschema
import numpy as np

# Published (mean, sigma, quantum volume) per device, kept as reference metadata.
REFERENCE_TABLE = {
    "ibm_cairo": (0.0147, 0.0123, 64),
    "ibm_hanoi": (0.0155, 0.0161, 64),
    "ibmq_brooklyn": (0.0473, 0.0500, 32),
    "ibmq_montreal": (0.0441, 0.0600, 128),
    "ibmq_toronto": (0.0517, 0.0645, 32),
    "ibmq_manhattan": (0.183, 0.319, 32),
}

_PROB = {"type": "number", "minimum": 0, "maximum": 1}
_DURATION = {"type": "number", "exclusiveMinimum": 0}

SCHEMA = {
    "type": "object",
    "required": ["device", "t_id_ns", "t_meas_ns", "t_reset_ns", "qubits", "cx"],
    "properties": {
        "device": {"type": "string"},
        "quantum_volume": {"type": ["integer", "null"]},
        "t_id_ns": _DURATION,
        "t_meas_ns": _DURATION,
        "t_reset_ns": _DURATION,
        "qubits": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["index", "prep_error", "meas_error", "id_error"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "prep_error": _PROB,
                    "meas_error": _PROB,
                    "id_error": {"type": "number", "minimum": 0, "maximum": 0.5},
                },
            },
        },
        "cx": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["pair", "error"],
                "properties": {
                    "pair": {
                        "type": "array",
                        "items": {"type": "integer", "minimum": 0},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "error": _PROB,
                },
            },
        },
    },
}


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class CalibrationData:
    device: str
    prep_error: tuple[float, ...]
    meas_error: tuple[float, ...]
    cx_error: tuple[float, ...]
    id_error: tuple[float, ...]
    t_id: float
    t_meas: float
    t_reset: float
    quantum_volume: Optional[int] = None

    @classmethod
    def from_dict(cls, data: dict) -> "CalibrationData":
        try:
            jsonschema.validate(data, SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(map(str, exc.absolute_path)) or "<root>"
            raise CalibrationError(f"calibration schema violation at {where}: {exc.message}") from None
        qs = data["qubits"]
        return cls(
            device=data["device"],
            prep_error=tuple(q["prep_error"] for q in qs),
            meas_error=tuple(q["meas_error"] for q in qs),
            cx_error=tuple(c["error"] for c in data["cx"]),
            id_error=tuple(q["id_error"] for q in qs),
            t_id=float(data["t_id_ns"]),
            t_meas=float(data["t_meas_ns"]),
            t_reset=float(data["t_reset_ns"]),
            quantum_volume=data.get("quantum_volume"),
        )


def load_calibration(path: Union[str, Path]) -> CalibrationData:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CalibrationError(f"{path}: malformed JSON ({exc})") from None
    return CalibrationData.from_dict(data)


def idle_error_probability(p_id: float, t_meas: float, t_reset: float, t_id: float) -> float:
    """Chance of an odd number of identity-gate errors while another qubit is
    measured and reset: ``1 - (1 - 2 p_id) ** ((t_meas + t_reset) / t_id)``."""
    if not 0.0 <= p_id <= 0.5:
        raise ValueError(f"p_id must lie in [0, 0.5], got {p_id}")
    if t_id <= 0 or t_meas < 0 or t_reset < 0:
        raise ValueError("durations must be non-negative and t_id positive")
    k = (t_meas + t_reset) / t_id
    if k == 0:
        return 0.0
    if p_id == 0.5:
        return 1.0
    # expm1/log1p keep full relative precision for small p_id
    return -math.expm1(k * math.log1p(-2.0 * p_id))


def combined_probabilities(calib: CalibrationData) -> np.ndarray:
    idle = [
        idle_error_probability(p, calib.t_meas, calib.t_reset, calib.t_id) for p in calib.id_error
    ]
    return np.array(
        list(calib.prep_error) + list(calib.meas_error) + list(calib.cx_error) + idle, float
    )


def calibration_stats(calib: CalibrationData) -> tuple[float, float]:
    """Mean and population standard deviation of all error probabilities."""
    probs = combined_probabilities(calib)
    if probs.size == 0 or not calib.prep_error or not calib.cx_error:
        raise CalibrationError("calibration lists must be non-empty")
    return float(probs.mean()), float(probs.std())

