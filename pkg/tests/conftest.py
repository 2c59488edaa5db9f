import sys
import warnings

import numpy as np
import pytest

from hexmatch.circuit import CircuitProgram, Instruction, Kind, gate, measure, reset
from hexmatch.lattice import build_code

warnings.filterwarnings("ignore", message=".*TBB.*")


def random_program(rng: np.random.Generator, n: int, length: int, noise: bool = True) -> CircuitProgram:
    """Random Clifford program over ``n`` qubits mixing every instruction kind."""
    kinds = ["H", "S", "S_DAG", "CX", "MEASURE_Z", "RESET"]
    if noise:
        kinds += ["X_ERROR", "DEPOLARIZE2"]
    if n < 2:
        kinds = [k for k in kinds if k not in ("CX", "DEPOLARIZE2")]
    insts, nbits = [], 0
    for _ in range(length):
        k = kinds[rng.integers(len(kinds))]
        a = int(rng.integers(n))
        if k in ("CX", "DEPOLARIZE2"):
            b = int(rng.choice([q for q in range(n) if q != a]))
            if k == "CX":
                insts.append(gate("CX", a, b))
            else:
                insts.append(Instruction(Kind.DEPOLARIZE2, (a, b), float(rng.choice([0.05, 0.2, 0.5]))))
        elif k == "MEASURE_Z":
            insts.append(measure(a, nbits))
            nbits += 1
        elif k == "RESET":
            insts.append(reset(a))
        elif k == "X_ERROR":
            insts.append(Instruction(Kind.X_ERROR, (a,), float(rng.choice([0.05, 0.2, 0.5]))))
        else:
            insts.append(gate(k, a))
    insts += [measure(q, nbits + q) for q in range(n)]
    return CircuitProgram(n, nbits + n, insts)


@pytest.fixture(scope="session")
def falcon():
    return build_code("falcon-27")


@pytest.fixture(scope="session")
def hummingbird():
    return build_code("hummingbird-65")


@pytest.fixture(scope="session")
def hexagon():
    return build_code("hex-1x1")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
