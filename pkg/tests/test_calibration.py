import json
import math
import statistics
from fractions import Fraction
from pathlib import Path

import pytest

from hexmatch.calibration import (
    REFERENCE_TABLE,
    CalibrationData,
    CalibrationError,
    calibration_stats,
    combined_probabilities,
    idle_error_probability,
    load_calibration,
)

FIX = Path(__file__).parent / "fixtures"


def _exact_idle(p, k):
    # rational arithmetic: exact for integer exponents
    return 1 - (1 - 2 * Fraction(p)) ** k


def test_idle_zero():
    assert idle_error_probability(0.0, 500, 300, 35) == 0.0


@pytest.mark.parametrize("p", [1e-6, 0.001, 0.0137, 0.2])
def test_idle_exponent_one(p):
    assert idle_error_probability(p, 20.0, 15.6, 35.6) == pytest.approx(2 * p, rel=1e-12)


def test_idle_ten_steps():
    want = float(_exact_idle(Fraction(1, 1000), 10))
    assert want == float(1 - Fraction(998, 1000) ** 10)
    assert idle_error_probability(0.001, 700.0, 300.0, 100.0) == pytest.approx(want, rel=1e-12)


def test_idle_small_p_keeps_precision():
    # naive 1-(1-2p)**k loses digits here; exact value is ~2kp
    got = idle_error_probability(1e-12, 5000, 900, 35.6)
    k = Fraction(5900) / Fraction(356, 10)
    assert got == pytest.approx(float(2 * Fraction(1, 10**12) * k), rel=1e-9)


@pytest.mark.parametrize("args", [(0.6, 1, 1, 1), (-0.1, 1, 1, 1), (0.1, 1, 1, 0), (0.1, -1, 1, 1)])
def test_idle_errors(args):
    with pytest.raises(ValueError):
        idle_error_probability(*args)


def test_uniform_file():
    calib = load_calibration(FIX / "calib_uniform.json")
    mean, std = calibration_stats(calib)
    assert mean == pytest.approx(0.01, rel=1e-12)
    assert std == pytest.approx(0.0, abs=1e-15)


def test_two_values():
    calib = CalibrationData("pair", (0.0,), (0.02,), (0.0,), (0.005,), 100.0, 50.0, 50.0)
    assert list(combined_probabilities(calib)) == pytest.approx([0.0, 0.02, 0.0, 0.01])
    calib = CalibrationData("pair", (0.0,), (0.02,), (0.02,), (0.0,), 100.0, 50.0, 50.0)
    # four entries {0, 0.02, 0.02, 0}: same mean/std as the two-element list {0, 0.02}
    assert calibration_stats(calib) == pytest.approx((0.01, 0.01))


def test_mixed_file_matches_spreadsheet_recomputation():
    data = json.loads((FIX / "calib_mixed.json").read_text())
    k = (data["t_meas_ns"] + data["t_reset_ns"]) / data["t_id_ns"]
    column = [q["prep_error"] for q in data["qubits"]]
    column += [q["meas_error"] for q in data["qubits"]]
    column += [c["error"] for c in data["cx"]]
    column += [1 - (1 - 2 * q["id_error"]) ** k for q in data["qubits"]]
    mean, std = calibration_stats(load_calibration(FIX / "calib_mixed.json"))
    assert mean == pytest.approx(statistics.fmean(column), rel=1e-12)
    assert std == pytest.approx(statistics.pstdev(column), rel=1e-10)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(qubits=[]),
    lambda d: d.update(cx=[]),
    lambda d: d.pop("t_id_ns"),
    lambda d: d.update(t_id_ns=0),
    lambda d: d["qubits"][0].update(prep_error=1.5),
    lambda d: d["qubits"][0].update(id_error=0.7),
    lambda d: d["cx"][0].update(pair=[1]),
    lambda d: d.update(device=3),
])
def test_schema_errors(mutate):
    data = json.loads((FIX / "calib_uniform.json").read_text())
    mutate(data)
    with pytest.raises(CalibrationError):
        CalibrationData.from_dict(data)


def test_malformed_json(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("{")
    with pytest.raises(CalibrationError):
        load_calibration(path)


def test_reference_table_is_metadata():
    assert REFERENCE_TABLE["ibm_cairo"] == (0.0147, 0.0123, 64)
    assert REFERENCE_TABLE["ibmq_manhattan"][:2] == (0.183, 0.319)
    assert len(REFERENCE_TABLE) == 6
    assert all(math.isfinite(v) for row in REFERENCE_TABLE.values() for v in row)
