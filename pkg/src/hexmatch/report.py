"""Noise sweeps and their CSV / SVG output."""

from __future__ import annotations

import csv
import io
from typing import Sequence, Union

from .analysis import ExperimentStats, experiment_stats
from .circuit import build_experiment
from .lattice import CodeSpec
from .noise import NoiseModel, apply_noise_model
from .simulator import run_shots

CSV_COLUMNS = ("device_or_p", "mean_pW", "stderr_pW", "mean_pZ", "stderr_pZ", "num_shots", "T")


def run_point(code: CodeSpec, T: int, p: float, shots: int, seed: int) -> ExperimentStats:
    ideal = build_experiment(code, T)
    noisy = apply_noise_model(ideal, NoiseModel(p))
    return experiment_stats(run_shots(noisy, shots, seed), noisy, code)


def run_sweep(
    code: CodeSpec, T: int, p_values: Sequence[float], shots: int, seed: int
) -> list[tuple[float, ExperimentStats]]:
    """One point per noise strength, in ascending order.

    Every point reuses ``seed``, so the sweep shares random streams across p.
    """
    return [(p, run_point(code, T, p, shots, seed)) for p in sorted(p_values)]


def stats_csv(rows: Sequence[tuple[Union[float, str], ExperimentStats]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for label, s in rows:
        w.writerow(
            [label, repr(s.mean_pW), repr(s.stderr_pW), repr(s.mean_pZ), repr(s.stderr_pZ),
             s.num_shots, s.T]
        )
    return buf.getvalue()


def stats_svg(rows: Sequence[tuple[float, ExperimentStats]], title: str = "") -> str:
    """Scatter of p_W (x markers) and p_Z (+ markers) against noise strength."""
    W, H, L, R, TOP, B = 480, 360, 60, 20, 30, 50
    pw, ph = W - L - R, H - TOP - B
    pmax = max([p for p, _ in rows] + [1e-12])
    xs = lambda p: L + pw * p / pmax  # noqa: E731
    ys = lambda v: TOP + ph * (1 - v / 0.6)  # noqa: E731
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>',
        f'<line x1="{L}" y1="{TOP + ph}" x2="{L + pw}" y2="{TOP + ph}" stroke="black"/>',
        f'<line x1="{L}" y1="{TOP}" x2="{L}" y2="{TOP + ph}" stroke="black"/>',
    ]
    for v in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6):
        y = ys(v)
        out.append(f'<line x1="{L - 4}" y1="{y:.1f}" x2="{L}" y2="{y:.1f}" stroke="black"/>')
        out.append(f'<text x="{L - 8}" y="{y + 4:.1f}" text-anchor="end">{v:.1f}</text>')
    for k in range(5):
        p = pmax * k / 4
        x = xs(p)
        out.append(f'<line x1="{x:.1f}" y1="{TOP + ph}" x2="{x:.1f}" y2="{TOP + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{x:.1f}" y="{TOP + ph + 16}" text-anchor="middle">{p:.3g}</text>')
    out.append(f'<text x="{L + pw / 2}" y="{H - 10}" text-anchor="middle">p</text>')
    out.append(f'<line x1="{L}" y1="{ys(0.5):.1f}" x2="{L + pw}" y2="{ys(0.5):.1f}" '
               'stroke="grey" stroke-dasharray="4 3"/>')
    if title:
        out.append(f'<text x="{L + pw / 2}" y="18" text-anchor="middle">{title}</text>')
    d = 4
    for p, s in rows:
        x, y = xs(p), ys(s.mean_pW)
        out.append(
            f'<path d="M{x - d:.1f},{y - d:.1f} L{x + d:.1f},{y + d:.1f} '
            f'M{x - d:.1f},{y + d:.1f} L{x + d:.1f},{y - d:.1f}" stroke="#c0392b" '
            'stroke-width="1.5" class="pW"/>'
        )
        x, y = xs(p), ys(s.mean_pZ)
        out.append(
            f'<path d="M{x - d:.1f},{y:.1f} L{x + d:.1f},{y:.1f} '
            f'M{x:.1f},{y - d:.1f} L{x:.1f},{y + d:.1f}" stroke="#2471a3" '
            'stroke-width="1.5" class="pZ"/>'
        )
    out.append(f'<text x="{L + pw - 90}" y="{TOP + 14}" fill="#c0392b">&#215; &lt;p_W&gt;</text>')
    out.append(f'<text x="{L + pw - 90}" y="{TOP + 30}" fill="#2471a3">+ &lt;p_Z&gt;</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
