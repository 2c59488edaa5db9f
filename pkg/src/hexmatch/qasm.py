"""OpenQASM 2.0 export of noise-free programs, plus a reader for the same subset."""

from __future__ import annotations

import re

from .circuit import CircuitProgram, Instruction, Kind, gate, measure, reset

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'

_NAMES = {Kind.H: "h", Kind.S: "s", Kind.S_DAG: "sdg", Kind.CX: "cx"}
_KINDS = {v: k for k, v in _NAMES.items()}


class QasmError(ValueError):
    pass


def export_openqasm(program: CircuitProgram) -> str:
    if program.has_noise:
        raise QasmError("noise instructions cannot be exported; strip them first")
    lines = [HEADER.rstrip("\n")]
    if program.num_qubits:
        lines.append(f"qreg q[{program.num_qubits}];")
    if program.num_bits:
        lines.append(f"creg c[{program.num_bits}];")
    for inst in program.instructions:
        if inst.kind == Kind.RESET:
            lines.append(f"reset q[{inst.qubits[0]}];")
        elif inst.kind == Kind.MEASURE_Z:
            lines.append(f"measure q[{inst.qubits[0]}] -> c[{inst.classical_bit}];")
        else:
            args = ",".join(f"q[{q}]" for q in inst.qubits)
            lines.append(f"{_NAMES[inst.kind]} {args};")
    return "\n".join(lines) + "\n"


_REG = re.compile(r"^(qreg|creg)\s+([a-z]\w*)\[(\d+)\]$")
_MEAS = re.compile(r"^measure\s+q\[(\d+)\]\s*->\s*c\[(\d+)\]$")
_RESET = re.compile(r"^reset\s+q\[(\d+)\]$")
_GATE = re.compile(r"^(h|s|sdg|cx)\s+q\[(\d+)\](?:\s*,\s*q\[(\d+)\])?$")


def parse_openqasm(text: str) -> tuple[int, int, list[Instruction]]:
    """Parse text written by :func:`export_openqasm`; return (qubits, bits, instructions)."""
    body = re.sub(r"//[^\n]*", "", text)
    statements = [s.strip() for s in body.split(";")]
    if statements[-1]:
        raise QasmError(f"missing ';' after {statements[-1]!r}")
    statements = statements[:-1]
    if not statements or statements[0] != "OPENQASM 2.0":
        raise QasmError("program must start with 'OPENQASM 2.0;'")
    nq = nb = 0
    insts: list[Instruction] = []
    for s in statements[1:]:
        s = " ".join(s.split())
        if s == 'include "qelib1.inc"':
            continue
        if m := _REG.match(s):
            if (m.group(1), m.group(2)) not in (("qreg", "q"), ("creg", "c")):
                raise QasmError(f"unexpected register {s!r}")
            if m.group(1) == "qreg":
                nq = int(m.group(3))
            else:
                nb = int(m.group(3))
        elif m := _MEAS.match(s):
            insts.append(measure(int(m.group(1)), int(m.group(2))))
        elif m := _RESET.match(s):
            insts.append(reset(int(m.group(1))))
        elif m := _GATE.match(s):
            kind = _KINDS[m.group(1)]
            qs = [int(g) for g in m.group(2, 3) if g is not None]
            if len(qs) != kind.arity:
                raise QasmError(f"wrong arity in {s!r}")
            insts.append(gate(kind, *qs))
        else:
            raise QasmError(f"unsupported statement {s!r}")
    for inst in insts:
        if max(inst.qubits) >= nq or (inst.classical_bit is not None and inst.classical_bit >= nb):
            raise QasmError(f"{inst} is outside the declared registers")
    return nq, nb, insts
