"""Bit-packed stabilizer tableau (Aaronson-Gottesman) with Pauli noise.

Rows ``0..n-1`` are destabilizers, ``n..2n-1`` stabilizers and row ``2n`` is
scratch space for deterministic measurements. Each row stores its X and Z
parts as ``uint64`` words, so a row product costs ``ceil(n / 64)`` word
operations.
"""

from __future__ import annotations

from typing import Optional

import numpy as np
from numba import njit, prange

from ..circuit import CircuitProgram, Instruction, Kind
from .rng import MEASURE_STREAM, NOISE_STREAM, seed64, stream_key, uniform
from .shots import ShotTable

OP_RESET, OP_H, OP_S, OP_S_DAG, OP_CX, OP_MEASURE, OP_X_ERROR, OP_DEPOL2 = range(8)
OPCODES = {
    Kind.RESET: OP_RESET,
    Kind.H: OP_H,
    Kind.S: OP_S,
    Kind.S_DAG: OP_S_DAG,
    Kind.CX: OP_CX,
    Kind.MEASURE_Z: OP_MEASURE,
    Kind.X_ERROR: OP_X_ERROR,
    Kind.DEPOLARIZE2: OP_DEPOL2,
}

_ONE = np.uint64(1)
_ZERO = np.uint64(0)
_K1 = np.uint64(0x5555555555555555)
_K2 = np.uint64(0x3333333333333333)
_K4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_KF = np.uint64(0x0101010101010101)


@njit(cache=True)
def _popcount(v):
    v = v - ((v >> _ONE) & _K1)
    v = (v & _K2) + ((v >> np.uint64(2)) & _K2)
    v = (v + (v >> np.uint64(4))) & _K4
    return np.int64((v * _KF) >> np.uint64(56))


@njit(cache=True)
def _bit(a):
    return a >> 6, _ONE << np.uint64(a & 63)


@njit(cache=True)
def _fresh(n):
    words = (n + 63) // 64
    x = np.zeros((2 * n + 1, words), np.uint64)
    z = np.zeros((2 * n + 1, words), np.uint64)
    r = np.zeros(2 * n + 1, np.uint8)
    for i in range(n):
        w, m = _bit(i)
        x[i, w] |= m
        z[n + i, w] |= m
    return x, z, r


@njit(cache=True)
def _rowsum(x, z, r, h, i):
    """Row h <- row i * row h, tracking the sign exactly."""
    plus = 0
    minus = 0
    for w in range(x.shape[1]):
        x1 = x[i, w]
        z1 = z[i, w]
        x2 = x[h, w]
        z2 = z[h, w]
        # sites where the product picks up +i / -i
        p = (x1 & z1 & ~x2 & z2) | (x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2)
        m = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2)
        plus += _popcount(p)
        minus += _popcount(m)
        x[h, w] = x2 ^ x1
        z[h, w] = z2 ^ z1
    total = 2 * np.int64(r[h]) + 2 * np.int64(r[i]) + plus - minus
    r[h] = np.uint8(((total % 4) + 4) % 4 // 2)


@njit(cache=True)
def _h(x, z, r, nrows, a):
    w, m = _bit(a)
    for i in range(nrows):
        xb = x[i, w] & m
        zb = z[i, w] & m
        if xb != _ZERO and zb != _ZERO:
            r[i] ^= 1
        if (xb != _ZERO) != (zb != _ZERO):
            x[i, w] ^= m
            z[i, w] ^= m


@njit(cache=True)
def _s(x, z, r, nrows, a, dagger):
    w, m = _bit(a)
    for i in range(nrows):
        if x[i, w] & m:
            zb = (z[i, w] & m) != _ZERO
            # S: Y -> -X ; S_DAG: X -> -Y
            if zb != dagger:
                r[i] ^= 1
            z[i, w] ^= m


@njit(cache=True)
def _cx(x, z, r, nrows, c, t):
    wc, mc = _bit(c)
    wt, mt = _bit(t)
    for i in range(nrows):
        xc = (x[i, wc] & mc) != _ZERO
        zt = (z[i, wt] & mt) != _ZERO
        if xc and zt:
            xt = (x[i, wt] & mt) != _ZERO
            zc = (z[i, wc] & mc) != _ZERO
            if xt == zc:
                r[i] ^= 1
        if xc:
            x[i, wt] ^= mt
        if zt:
            z[i, wc] ^= mc


@njit(cache=True)
def _pauli(x, z, r, nrows, a, which):
    """Apply X (1), Y (2) or Z (3) on qubit a: flip signs of anticommuting rows."""
    if which == 0:
        return
    w, m = _bit(a)
    for i in range(nrows):
        xb = (x[i, w] & m) != _ZERO
        zb = (z[i, w] & m) != _ZERO
        if which == 1:
            flip = zb
        elif which == 3:
            flip = xb
        else:
            flip = xb != zb
        if flip:
            r[i] ^= 1


@njit(cache=True)
def _measure(x, z, r, n, a, mkey, ctr):
    w, m = _bit(a)
    p = -1
    for i in range(n, 2 * n):
        if x[i, w] & m:
            p = i
            break
    if p >= 0:
        for i in range(2 * n):
            if i != p and (x[i, w] & m):
                _rowsum(x, z, r, i, p)
        for k in range(x.shape[1]):
            x[p - n, k] = x[p, k]
            z[p - n, k] = z[p, k]
            x[p, k] = _ZERO
            z[p, k] = _ZERO
        r[p - n] = r[p]
        z[p, w] = m
        u = uniform(mkey, ctr[0])
        ctr[0] += 1
        r[p] = 1 if u < 0.5 else 0
        return np.int64(r[p])
    s = 2 * n
    for k in range(x.shape[1]):
        x[s, k] = _ZERO
        z[s, k] = _ZERO
    r[s] = 0
    for i in range(n):
        if x[i, w] & m:
            _rowsum(x, z, r, s, i + n)
    return np.int64(r[s])


@njit(cache=True)
def _exec(x, z, r, n, op, a, b, prob, mkey, nkey, ctr):
    """Run one instruction; returns the outcome bit for RESET/MEASURE_Z, else -1."""
    nrows = 2 * n
    if op == OP_H:
        _h(x, z, r, nrows, a)
    elif op == OP_S:
        _s(x, z, r, nrows, a, False)
    elif op == OP_S_DAG:
        _s(x, z, r, nrows, a, True)
    elif op == OP_CX:
        _cx(x, z, r, nrows, a, b)
    elif op == OP_MEASURE:
        return _measure(x, z, r, n, a, mkey, ctr)
    elif op == OP_RESET:
        bit = _measure(x, z, r, n, a, mkey, ctr)
        if bit:
            _pauli(x, z, r, nrows, a, 1)
        return bit
    elif op == OP_X_ERROR:
        u = uniform(nkey, ctr[1])
        ctr[1] += 1
        if u < prob:
            _pauli(x, z, r, nrows, a, 1)
    elif op == OP_DEPOL2:
        u = uniform(nkey, ctr[1])
        ctr[1] += 1
        if u < prob:
            v = uniform(nkey, ctr[1])
            ctr[1] += 1
            k = 1 + np.int64(v * 15.0)
            if k > 15:
                k = 15
            _pauli(x, z, r, nrows, a, k & 3)
            _pauli(x, z, r, nrows, b, k >> 2)
    return -1


@njit(cache=True)
def _run_one(ops, qa, qb, prob, bits, n, seed, shot, out_row):
    x, z, r = _fresh(n)
    ctr = np.zeros(2, np.uint64)
    mkey = stream_key(seed, shot, MEASURE_STREAM)
    nkey = stream_key(seed, shot, NOISE_STREAM)
    for k in range(ops.shape[0]):
        res = _exec(x, z, r, n, ops[k], qa[k], qb[k], prob[k], mkey, nkey, ctr)
        if ops[k] == OP_MEASURE:
            out_row[bits[k]] = res


@njit(cache=True, parallel=True)
def _run_range(ops, qa, qb, prob, bits, n, num_bits, seed, first, count):
    out = np.zeros((count, num_bits), np.uint8)
    for s in prange(count):
        _run_one(ops, qa, qb, prob, bits, n, seed, first + s, out[s])
    return out


def encode(program: CircuitProgram):
    """Flatten a program into parallel numpy arrays for the kernels."""
    m = len(program.instructions)
    ops = np.empty(m, np.int64)
    qa = np.empty(m, np.int64)
    qb = np.full(m, -1, np.int64)
    prob = np.zeros(m, np.float64)
    bits = np.full(m, -1, np.int64)
    for k, inst in enumerate(program.instructions):
        ops[k] = OPCODES[inst.kind]
        qa[k] = inst.qubits[0]
        if len(inst.qubits) > 1:
            qb[k] = inst.qubits[1]
        if inst.probability is not None:
            prob[k] = inst.probability
        if inst.classical_bit is not None:
            bits[k] = inst.classical_bit
    return ops, qa, qb, prob, bits


def run_shots(program: CircuitProgram, num_shots: int, seed: int = 0, first_shot: int = 0) -> ShotTable:
    """Simulate ``num_shots`` independent shots from the all-zero state.

    Shot ``s`` draws only from streams keyed by ``(seed, first_shot + s)``, so
    any split of a shot range reassembles to the same table.
    """
    if num_shots < 1:
        raise ValueError(f"num_shots must be >= 1, got {num_shots}")
    ops, qa, qb, prob, bits = encode(program)
    out = _run_range(
        ops, qa, qb, prob, bits, program.num_qubits, program.num_bits,
        np.uint64(seed64(seed)), first_shot, num_shots,
    )
    return ShotTable(out)


class SimState:
    """Single-shot simulator state for step-by-step use."""

    def __init__(self, n: int, seed: int = 0, shot: int = 0):
        if n < 1:
            raise ValueError("need at least one qubit")
        self.n = n
        self.x, self.z, self.r = _fresh(n)
        self._ctr = np.zeros(2, np.uint64)
        s = np.uint64(seed64(seed))
        # keep keys unsigned: a Python int above 2**63 would not dispatch
        self._mkey = np.uint64(stream_key(s, shot, MEASURE_STREAM))
        self._nkey = np.uint64(stream_key(s, shot, NOISE_STREAM))

    def apply(self, inst: Instruction) -> Optional[int]:
        if max(inst.qubits) >= self.n or min(inst.qubits) < 0:
            raise IndexError(f"{inst} addresses a qubit outside 0..{self.n - 1}")
        b = inst.qubits[1] if len(inst.qubits) > 1 else -1
        res = _exec(
            self.x, self.z, self.r, self.n, OPCODES[inst.kind], inst.qubits[0], b,
            float(inst.probability or 0.0), self._mkey, self._nkey, self._ctr,
        )
        return int(res) if inst.kind in (Kind.MEASURE_Z, Kind.RESET) else None

    def run(self, instructions) -> list[int]:
        out = []
        for inst in instructions:
            res = self.apply(inst)
            if inst.kind == Kind.MEASURE_Z:
                out.append(res)
        return out

    def dense(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Unpacked (x, z, sign) arrays of the 2n tableau rows."""
        n = self.n
        idx = np.arange(n)
        words, shifts = idx // 64, (idx % 64).astype(np.uint64)
        xs = ((self.x[: 2 * n, words] >> shifts) & _ONE).astype(np.uint8)
        zs = ((self.z[: 2 * n, words] >> shifts) & _ONE).astype(np.uint8)
        return xs, zs, self.r[: 2 * n].copy()

    def stabilizers(self) -> list[str]:
        xs, zs, r = self.dense()
        letters = np.array(["I", "X", "Z", "Y"])
        return [
            ("-" if r[i] else "+") + "".join(letters[xs[i] + 2 * zs[i]])
            for i in range(self.n, 2 * self.n)
        ]

    def check(self) -> None:
        """Raise AssertionError unless the rows form a symplectic basis."""
        xs, zs, _ = self.dense()
        xs = xs.astype(np.int64)
        zs = zs.astype(np.int64)
        omega = (xs @ zs.T + zs @ xs.T) % 2
        n = self.n
        want = np.zeros((2 * n, 2 * n), np.int64)
        want[:n, n:] = np.eye(n, dtype=np.int64)
        want[n:, :n] = np.eye(n, dtype=np.int64)
        assert np.array_equal(omega, want), "tableau rows lost their commutation structure"
        assert _gf2_rank(np.hstack([xs, zs])) == 2 * n, "tableau rank dropped below 2n"


def _gf2_rank(mat: np.ndarray) -> int:
    m = mat.copy() % 2
    rank = 0
    rows, cols = m.shape
    for c in range(cols):
        piv = next((i for i in range(rank, rows) if m[i, c]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        for i in range(rows):
            if i != rank and m[i, c]:
                m[i] ^= m[rank]
        rank += 1
    return rank
