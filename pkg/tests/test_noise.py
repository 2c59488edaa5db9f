import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hexmatch.circuit import CircuitProgram, Kind, build_experiment, parity_gadget
from hexmatch.lattice import Link
from hexmatch.noise import NoiseModel, apply_noise_model, strip_noise
from hexmatch.simulator import run_shots

from conftest import random_program


def _noise_counts(prog):
    c = prog.counts()
    return c[Kind.X_ERROR], c[Kind.DEPOLARIZE2]


def test_z_gadget_insertions():
    prog = CircuitProgram(3, 1, parity_gadget(Link(0, "Z", (0, 1), 2, False)))
    noisy = apply_noise_model(prog, NoiseModel(0.01))
    assert [str(i) for i in noisy.instructions] == [
        "RESET 2", "X_ERROR(0.01) 2",
        "CX 0 2", "DEPOLARIZE2(0.01) 0 2",
        "CX 1 2", "DEPOLARIZE2(0.01) 1 2",
        "X_ERROR(0.01) 2", "MEASURE_Z 2 -> 0",
    ]


@pytest.mark.parametrize("kind", "XY")
def test_basis_changes_draw_no_noise(kind):
    z = CircuitProgram(3, 1, parity_gadget(Link(0, "Z", (0, 1), 2, False)))
    other = CircuitProgram(3, 1, parity_gadget(Link(0, kind, (0, 1), 2, False)))
    m = NoiseModel(0.02)
    assert _noise_counts(apply_noise_model(other, m)) == _noise_counts(apply_noise_model(z, m)) == (2, 2)


def test_truncated_measurement_gets_flip():
    prog = CircuitProgram(1, 1, parity_gadget(Link(0, "Z", (0,), None, True)))
    assert [i.kind for i in apply_noise_model(prog, NoiseModel(0.1)).instructions] == \
        [Kind.X_ERROR, Kind.MEASURE_Z]


@pytest.mark.parametrize("name", ["falcon-27", "hummingbird-65"])
def test_noise_count_rule(name):
    from hexmatch.lattice import build_code
    prog = build_experiment(build_code(name), 3)
    noisy = apply_noise_model(prog, NoiseModel(0.01))
    c = prog.counts()
    x, d = _noise_counts(noisy)
    assert x + d == c[Kind.RESET] + c[Kind.MEASURE_Z] + c[Kind.CX]
    assert d == c[Kind.CX]
    assert noisy.meas_map == prog.meas_map
    assert strip_noise(noisy) == prog


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0, 1))
def test_strip_recovers_random_programs(seed, p):
    prog = random_program(np.random.default_rng(seed), 4, 40, noise=False)
    noisy = apply_noise_model(prog, NoiseModel(p))
    assert strip_noise(noisy) == prog
    # insertion positions: flip right after each reset and right before each measurement
    insts = noisy.instructions
    for k, inst in enumerate(insts):
        if inst.kind == Kind.RESET:
            assert insts[k + 1].kind == Kind.X_ERROR and insts[k + 1].qubits == inst.qubits
        elif inst.kind == Kind.MEASURE_Z:
            assert insts[k - 1].kind == Kind.X_ERROR and insts[k - 1].qubits == inst.qubits
        elif inst.kind == Kind.CX:
            assert insts[k + 1].kind == Kind.DEPOLARIZE2 and insts[k + 1].qubits == inst.qubits


def test_zero_noise_is_bit_identical(falcon):
    prog = build_experiment(falcon, 3)
    noisy = apply_noise_model(prog, NoiseModel(0.0))
    assert run_shots(noisy, 500, seed=9) == run_shots(prog, 500, seed=9)


def test_rejects_noisy_input(hexagon):
    noisy = apply_noise_model(build_experiment(hexagon, 1), NoiseModel(0.1))
    with pytest.raises(ValueError):
        apply_noise_model(noisy, NoiseModel(0.1))


@pytest.mark.parametrize("p", [-0.1, 1.5])
def test_model_range(p):
    with pytest.raises(ValueError):
        NoiseModel(p)
