"""Command-line front end.

Exit codes: 0 success, 2 bad arguments or input data, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .calibration import CalibrationError, calibration_stats, load_calibration
from .circuit import build_experiment, group_measurements_per_round
from .lattice import LayoutError, build_code
from .qasm import export_openqasm
from .report import run_sweep, stats_csv, stats_svg

EXIT_ARGS = 2
EXIT_IO = 3


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _p_list(text: str) -> list[float]:
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty noise list")
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise argparse.ArgumentTypeError(f"noise strength {v} outside [0, 1]")
    return values


def _layout_args(p: argparse.ArgumentParser):
    p.add_argument("--layout", default="falcon-27",
                   help="falcon-27, hummingbird-65, hex-RxC or a layout JSON file")
    p.add_argument("-T", "--rounds", type=_positive, default=3, dest="rounds",
                   help="measurement rounds (default 3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexmatch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="simulate a noise sweep and report <p_W>, <p_Z>")
    _layout_args(run)
    run.add_argument("--shots", type=_positive, default=8192)
    run.add_argument("--noise", type=_p_list, default=[0.0, 0.005, 0.01, 0.015, 0.02, 0.03])
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--csv", type=Path, help="write stats CSV here (default: stdout)")
    run.add_argument("--svg", type=Path, help="also write an SVG scatter plot")

    cal = sub.add_parser("calib", help="combined error statistics of a calibration file")
    cal.add_argument("--calib", type=Path, required=True)

    exp = sub.add_parser("export", help="write the ideal experiment circuit as OpenQASM 2.0")
    _layout_args(exp)
    exp.add_argument("--qasm", type=Path, required=True)

    info = sub.add_parser("info", help="summarise the code built on a layout")
    _layout_args(info)
    return parser


def _write(path: Path, text: str):
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_run(args) -> int:
    code = build_code(args.layout)
    rows = run_sweep(code, args.rounds, args.noise, args.shots, args.seed)
    text = stats_csv(rows)
    if args.csv:
        _write(args.csv, text)
    else:
        sys.stdout.write(text)
    if args.svg:
        _write(args.svg, stats_svg(rows, title=f"{code.layout.name}, T={args.rounds}"))
    return 0


def cmd_calib(args) -> int:
    calib = load_calibration(args.calib)
    mean, std = calibration_stats(calib)
    qv = calib.quantum_volume if calib.quantum_volume is not None else "n/a"
    print(f"device: {calib.device}")
    print(f"<p>: {mean:.6g}")
    print(f"sigma: {std:.6g}")
    print(f"quantum volume: {qv}")
    return 0


def cmd_export(args) -> int:
    code = build_code(args.layout)
    _write(args.qasm, export_openqasm(build_experiment(code, args.rounds)))
    return 0


def cmd_info(args) -> int:
    code = build_code(args.layout)
    prog = build_experiment(code, args.rounds)
    print(f"layout: {code.layout.name} ({code.layout.num_qubits} qubits)")
    print(f"plaquettes: {len(code.plaquettes)}  shifts: {code.num_shifts}")
    print(f"z-stabilizers: {len(code.z_stabilizers)} "
          f"({sum(code.links[i].truncated for i in code.z_stabilizers)} truncated)")
    for p in code.plaquettes:
        print(f"  plaquette {p.id}: qubits {list(p.qubits)} shift {p.shift} "
              f"incident z-links {sorted(p.incident_z_links)}")
    print(f"group measurements per round: {group_measurements_per_round(prog)}")
    print(f"instructions: {len(prog.instructions)}  classical bits: {prog.num_bits}")
    for note in code.diagnostics:
        print(f"  note: {note}")
    return 0


COMMANDS = {"run": cmd_run, "calib": cmd_calib, "export": cmd_export, "info": cmd_info}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (LayoutError, CalibrationError, ValueError) as exc:
        print(f"hexmatch: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except OSError as exc:
        print(f"hexmatch: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
