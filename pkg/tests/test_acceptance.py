"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line and the session
summary repeats them. Run just this file with ``pytest tests/test_acceptance.py -v``
or directly with ``python3 tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_program  # noqa: E402
from hexmatch.calibration import idle_error_probability  # noqa: E402
from hexmatch.circuit import build_experiment, group_measurements_per_round  # noqa: E402
from hexmatch.lattice import build_code  # noqa: E402
from hexmatch.report import run_point, run_sweep  # noqa: E402
from hexmatch.simulator import run_shots, statevector_oracle  # noqa: E402

RESULTS: list[str] = []
SWEEP_SHOTS = 20_000
SWEEP_SEED = 7


def report(n: int, ok: bool, detail: str):
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def falcon_code():
    return build_code("falcon-27")


@pytest.fixture(scope="module")
def sweep(falcon_code):
    # warm the compiled kernels so criterion 10 times simulation, not compilation
    run_shots(build_experiment(falcon_code, 1), 1)
    t0 = time.perf_counter()
    rows = dict(run_sweep(falcon_code, 3, [0.005, 0.01, 0.02, 0.03], SWEEP_SHOTS, SWEEP_SEED))
    return rows, time.perf_counter() - t0


def test_1_noiseless_invariance():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for name in ("falcon-27", "hummingbird-65"):
        code = build_code(name)
        s = run_point(code, 3, 0.0, 1000, seed=1)
        ok &= s.mean_pW == 0.0 and s.mean_pZ == 0.0
        parts.append(f"{name}: pW={s.mean_pW} pZ={s.mean_pZ}")
    dt = time.perf_counter() - t0
    ok &= dt < 10.0
    report(1, ok, "; ".join(parts) + f"; {dt:.1f}s (< 10s)")


def test_2_convergence(falcon_code):
    s = run_point(falcon_code, 3, 0.10, SWEEP_SHOTS, SWEEP_SEED)
    ok = abs(s.mean_pW - 0.5) <= 0.02 and abs(s.mean_pZ - 0.5) <= 0.02
    report(2, ok, f"p=0.10: pW={s.mean_pW:.4f} pZ={s.mean_pZ:.4f} (each within 0.02 of 0.5)")


def test_3_ordering(sweep):
    rows, _ = sweep
    ok = all(s.mean_pW > s.mean_pZ for s in rows.values())
    detail = ", ".join(f"p={p}: {s.mean_pW:.4f}>{s.mean_pZ:.4f}" for p, s in rows.items())
    report(3, ok, detail)


def test_4_pw_near_convergence(falcon_code):
    s = run_point(falcon_code, 3, 0.015, SWEEP_SHOTS, SWEEP_SEED)
    report(4, s.mean_pW >= 0.45, f"p=0.015: pW={s.mean_pW:.4f} +- {s.stderr_pW:.4f} (need >= 0.45)")


def test_5_pz_distinguishable(falcon_code):
    a = run_point(falcon_code, 3, 0.015, SWEEP_SHOTS, SWEEP_SEED)
    b = run_point(falcon_code, 3, 0.03, SWEEP_SHOTS, SWEEP_SEED)
    ok = a.mean_pZ <= 0.45 and b.mean_pZ < 0.5 - 3 * b.stderr_pZ
    report(5, ok, f"p=0.015: pZ={a.mean_pZ:.4f} (<= 0.45); p=0.03: pZ={b.mean_pZ:.4f} "
                  f"(< {0.5 - 3 * b.stderr_pZ:.4f})")


def test_6_algebra():
    checked, ok = 0, True
    for name in ("falcon-27", "hummingbird-65"):
        code = build_code(name)
        for p in code.plaquettes:
            va, vb, w = code.group_operator(p, "a"), code.group_operator(p, "b"), p.operator()
            ok &= va * vb == w
            ok &= va.commutes(w) and vb.commutes(w)
            for lid in p.boundary_links:
                link = code.links[lid].pauli()
                ok &= va.commutes(link) and vb.commutes(link)
            ok &= va.commutes(vb)
            checked += 1
    report(6, bool(ok), f"{checked} plaquettes: Va*Vb = W and commutation points 1-3 hold")


def test_7_oracle_equivalence():
    # seed fixed before the first run; programs mix every instruction kind incl. noise
    rng = np.random.default_rng(20240601)
    shots = 100_000
    worst, compared, bad = 0.0, 0, []
    for k in range(50):
        n = int(rng.integers(1, 9))
        prog = random_program(rng, n, 40)
        a = run_shots(prog, shots, seed=k).bits.mean(axis=0)
        b = statevector_oracle(prog, shots, seed=k).bits.mean(axis=0)
        se = np.sqrt((a * (1 - a) + b * (1 - b)) / shots)
        diff = np.abs(a - b)
        for j in range(prog.num_bits):
            compared += 1
            if se[j] == 0:
                if diff[j] != 0:
                    bad.append((k, j, float("inf")))
                continue
            z = diff[j] / se[j]
            worst = max(worst, z)
            if z > 3:
                bad.append((k, j, round(float(z), 2)))
    report(7, not bad, f"50 programs, {compared} bit marginals at 1e5 shots, worst |z|={worst:.2f}"
                       + (f", outside 3 SE: {bad}" if bad else ""))


def test_8_idle_formula():
    from fractions import Fraction
    cases = [
        (idle_error_probability(0.0, 10.0, 5.0, 35.6), 0.0),
        (idle_error_probability(0.0123, 20.0, 15.6, 35.6), 2 * 0.0123),
        (idle_error_probability(0.001, 700.0, 300.0, 100.0), float(1 - Fraction(998, 1000) ** 10)),
    ]
    ok = all(got == want if want == 0 else abs(got - want) <= 1e-12 * abs(want) for got, want in cases)
    report(8, ok, "p_id=0 -> 0; exponent 1 -> 2 p_id; 1 - 0.998^10 (rel 1e-12)")


def test_9_structure_counts():
    f = group_measurements_per_round(build_experiment(build_code("falcon-27"), 3))
    h = group_measurements_per_round(build_experiment(build_code("hummingbird-65"), 3))
    report(9, f == [4] * 3 and h == [16] * 3, f"falcon-27 {f}, hummingbird-65 {h}")


def test_10_performance(sweep):
    _, dt = sweep
    report(10, dt < 60.0, f"4 p-values x {SWEEP_SHOTS} shots, falcon-27, T=3: {dt:.1f}s (< 60s)")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
