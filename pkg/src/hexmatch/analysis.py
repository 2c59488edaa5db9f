"""Reduce shot tables to the plaquette (p_W) and z-link (p_Z) change rates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .circuit import CircuitProgram
from .lattice import CodeSpec
from .simulator.shots import ShotTable


@dataclass(frozen=True)
class ExperimentStats:
    per_plaquette_pW: Mapping[int, float]
    per_plaquette_pZ: Mapping[int, float]
    mean_pW: float
    mean_pZ: float
    stderr_pW: float
    stderr_pZ: float
    num_shots: int
    T: int


def _binomial(indicators: np.ndarray) -> tuple[float, float]:
    n = indicators.size
    if n == 0:
        return 0.0, 0.0
    m = float(indicators.mean())
    return m, float(np.sqrt(m * (1.0 - m) / n))


def _index(program: CircuitProgram):
    plaq, zblk = {}, {}
    for bit, rec in enumerate(program.meas_map):
        if rec.kind == "plaquette":
            plaq[(rec.round, rec.plaquette, rec.link)] = bit
        else:
            zblk[(rec.round, rec.phase, rec.link)] = bit
    return plaq, zblk


def plaquette_outcomes(shots: ShotTable, program: CircuitProgram, code: CodeSpec) -> np.ndarray:
    """XOR of the six link outcomes per (shot, round, plaquette)."""
    plaq, _ = _index(program)
    T = program.rounds
    idx = np.empty((T, len(code.plaquettes), 6), np.int64)
    for t in range(T):
        for j, p in enumerate(code.plaquettes):
            for k, lid in enumerate(p.group_a + p.group_b):
                try:
                    idx[t, j, k] = plaq[(t, p.id, lid)]
                except KeyError:
                    raise KeyError(
                        f"no measurement of link {lid} for plaquette {p.id} in round {t}"
                    ) from None
    return np.bitwise_xor.reduce(shots.bits[:, idx], axis=-1)


def compute_pW(plaquette_bits: np.ndarray, plaquette_ids=None):
    """Change frequency of each plaquette value between consecutive rounds.

    Returns ``(per_plaquette, mean, stderr)``.
    """
    shots, T, P = plaquette_bits.shape
    if T < 2:
        raise ValueError(f"p_W needs at least two rounds, got T={T}")
    changes = plaquette_bits[:, 1:, :] != plaquette_bits[:, :-1, :]
    ids = range(P) if plaquette_ids is None else plaquette_ids
    per = {pid: float(changes[:, :, j].mean()) for j, pid in enumerate(ids)}
    mean, err = _binomial(changes)
    return per, mean, err


def z_product_changes(shots: ShotTable, program: CircuitProgram, code: CodeSpec):
    """Change indicators of each plaquette's incident z-link product across
    its own measurement window.

    The window runs from the z-block closing the previous shift to the z-block
    closing the plaquette's shift; the very first shift has no prior block and
    is skipped. Returns ``(indicators[shot, k], plaquette id per column k)``.
    """
    _, zblk = _index(program)
    S = program.num_shifts
    cols, owners = [], []
    for t in range(program.rounds):
        for p in code.plaquettes:
            g = t * S + p.shift
            if g == 0:
                continue
            before = divmod(g - 1, S)
            after = (t, p.shift)
            links = sorted(p.incident_z_links)
            cols.append(
                [zblk[(*before, l)] for l in links] + [zblk[(*after, l)] for l in links]
            )
            owners.append(p.id)
    if not cols:
        return np.zeros((shots.num_shots, 0), bool), []
    idx = np.asarray(cols)
    return np.bitwise_xor.reduce(shots.bits[:, idx], axis=-1).astype(bool), owners


def compute_pZ(shots: ShotTable, program: CircuitProgram, code: CodeSpec):
    """Returns ``(per_plaquette, mean, stderr)`` of z-product change rates."""
    ind, owners = z_product_changes(shots, program, code)
    owners = np.asarray(owners)
    per = {
        p.id: float(ind[:, owners == p.id].mean()) if np.any(owners == p.id) else 0.0
        for p in code.plaquettes
    }
    mean, err = _binomial(ind)
    return per, mean, err


def experiment_stats(shots: ShotTable, program: CircuitProgram, code: CodeSpec) -> ExperimentStats:
    bits = plaquette_outcomes(shots, program, code)
    per_w, mw, ew = compute_pW(bits, [p.id for p in code.plaquettes])
    per_z, mz, ez = compute_pZ(shots, program, code)
    return ExperimentStats(per_w, per_z, mw, mz, ew, ez, shots.num_shots, program.rounds)
