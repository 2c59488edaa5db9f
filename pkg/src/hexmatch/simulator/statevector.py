"""Dense state-vector simulator used as an independent check on the tableau.

Each shot evolves a full ``2**n`` amplitude vector with qubit ``q`` on bit
``q`` of the basis index. Randomness comes from numba's own Mersenne Twister,
seeded once per call, so results are reproducible but unrelated to the
tableau engine's streams.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ..circuit import CircuitProgram, Kind
from .shots import ShotTable

MAX_QUBITS = 12
_ATOL = 1e-9

_CODES = {
    Kind.RESET: 0,
    Kind.H: 1,
    Kind.S: 2,
    Kind.S_DAG: 3,
    Kind.CX: 4,
    Kind.MEASURE_Z: 5,
    Kind.X_ERROR: 6,
    Kind.DEPOLARIZE2: 7,
}


@njit(cache=True)
def _x(psi, q):
    m = 1 << q
    for i in range(psi.shape[0]):
        if not i & m:
            a = psi[i]
            psi[i] = psi[i | m]
            psi[i | m] = a


@njit(cache=True)
def _z(psi, q):
    m = 1 << q
    for i in range(psi.shape[0]):
        if i & m:
            psi[i] = -psi[i]


@njit(cache=True)
def _pauli(psi, q, code):
    # 1=X, 2=Y, 3=Z; Y applied as X*Z, dropping the global phase
    if code == 2 or code == 3:
        _z(psi, q)
    if code == 1 or code == 2:
        _x(psi, q)


@njit(cache=True)
def _measure(psi, q):
    m = 1 << q
    p1 = 0.0
    for i in range(psi.shape[0]):
        if i & m:
            p1 += psi[i].real ** 2 + psi[i].imag ** 2
    if p1 < _ATOL:
        bit = 0
    elif p1 > 1.0 - _ATOL:
        bit = 1
    else:
        bit = 1 if np.random.random() < p1 else 0
    norm = np.sqrt(p1 if bit else 1.0 - p1)
    for i in range(psi.shape[0]):
        if ((i & m) != 0) == (bit == 1):
            psi[i] /= norm
        else:
            psi[i] = 0.0
    return bit


@njit(cache=True)
def _simulate(ops, qa, qb, prob, bits, n, num_bits, num_shots, seed):
    np.random.seed(seed)
    out = np.zeros((num_shots, num_bits), np.uint8)
    psi = np.zeros(1 << n, np.complex128)
    r2 = 1.0 / np.sqrt(2.0)
    for s in range(num_shots):
        psi[:] = 0.0
        psi[0] = 1.0
        for k in range(ops.shape[0]):
            op = ops[k]
            a = qa[k]
            if op == 1:
                m = 1 << a
                for i in range(psi.shape[0]):
                    if not i & m:
                        u = psi[i]
                        v = psi[i | m]
                        psi[i] = (u + v) * r2
                        psi[i | m] = (u - v) * r2
            elif op == 2 or op == 3:
                ph = 1j if op == 2 else -1j
                m = 1 << a
                for i in range(psi.shape[0]):
                    if i & m:
                        psi[i] *= ph
            elif op == 4:
                mc = 1 << a
                mt = 1 << qb[k]
                for i in range(psi.shape[0]):
                    if (i & mc) and not (i & mt):
                        u = psi[i]
                        psi[i] = psi[i | mt]
                        psi[i | mt] = u
            elif op == 5:
                out[s, bits[k]] = _measure(psi, a)
            elif op == 0:
                if _measure(psi, a):
                    _x(psi, a)
            elif op == 6:
                if np.random.random() < prob[k]:
                    _x(psi, a)
            elif op == 7:
                if np.random.random() < prob[k]:
                    c = np.random.randint(1, 16)
                    _pauli(psi, a, c & 3)
                    _pauli(psi, qb[k], c >> 2)
    return out


def statevector_oracle(program: CircuitProgram, num_shots: int, seed: int = 0) -> ShotTable:
    """Brute-force sampler with the same instruction semantics as the tableau engine."""
    if program.num_qubits > MAX_QUBITS:
        raise ValueError(
            f"state-vector oracle supports at most {MAX_QUBITS} qubits, got {program.num_qubits}"
        )
    if num_shots < 1:
        raise ValueError("num_shots must be >= 1")
    m = len(program.instructions)
    ops = np.empty(m, np.int64)
    qa = np.zeros(m, np.int64)
    qb = np.zeros(m, np.int64)
    prob = np.zeros(m)
    bits = np.zeros(m, np.int64)
    for k, inst in enumerate(program.instructions):
        ops[k] = _CODES[inst.kind]
        qa[k] = inst.qubits[0]
        qb[k] = inst.qubits[-1]
        prob[k] = inst.probability or 0.0
        bits[k] = inst.classical_bit if inst.classical_bit is not None else -1
    out = _simulate(
        ops, qa, qb, prob, bits, program.num_qubits, program.num_bits, num_shots,
        int(seed) % (2**32),
    )
    return ShotTable(out)
