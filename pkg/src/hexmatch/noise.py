"""Uniform circuit-level Pauli noise."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .circuit import CircuitProgram, Instruction, Kind


@dataclass(frozen=True)
class NoiseModel:
    """Single-parameter model: bit flips after resets and before measurements,
    two-qubit depolarizing after every CX. Basis-change gates are noiseless."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"noise strength must lie in [0, 1], got {self.p}")


def apply_noise_model(program: CircuitProgram, model: NoiseModel) -> CircuitProgram:
    if program.has_noise:
        raise ValueError("program already contains noise instructions")
    p = float(model.p)
    out: list[Instruction] = []
    for inst in program.instructions:
        if inst.kind == Kind.MEASURE_Z:
            out.append(Instruction(Kind.X_ERROR, inst.qubits, p))
        out.append(inst)
        if inst.kind == Kind.RESET:
            out.append(Instruction(Kind.X_ERROR, inst.qubits, p))
        elif inst.kind == Kind.CX:
            out.append(Instruction(Kind.DEPOLARIZE2, inst.qubits, p))
    return replace(program, instructions=tuple(out))


def strip_noise(program: CircuitProgram) -> CircuitProgram:
    return replace(
        program, instructions=tuple(i for i in program.instructions if not i.kind.is_noise)
    )
