"""Compile a matching code into a flat circuit of 2-body parity measurements."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Literal, Optional, Sequence

from .lattice import CodeSpec, Link, Plaquette


class Kind(str, Enum):
    RESET = "RESET"
    H = "H"
    S = "S"
    S_DAG = "S_DAG"
    CX = "CX"
    MEASURE_Z = "MEASURE_Z"
    X_ERROR = "X_ERROR"
    DEPOLARIZE2 = "DEPOLARIZE2"

    @property
    def is_noise(self) -> bool:
        return self in (Kind.X_ERROR, Kind.DEPOLARIZE2)

    @property
    def arity(self) -> int:
        return 2 if self in (Kind.CX, Kind.DEPOLARIZE2) else 1


@dataclass(frozen=True)
class Instruction:
    kind: Kind
    qubits: tuple[int, ...]
    probability: Optional[float] = None
    classical_bit: Optional[int] = None

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if len(self.qubits) != kind.arity or len(set(self.qubits)) != kind.arity:
            raise ValueError(f"{kind.value} needs {kind.arity} distinct qubits, got {self.qubits}")
        if kind.is_noise != (self.probability is not None):
            raise ValueError(f"{kind.value}: probability given iff noise instruction")
        if self.probability is not None and not 0.0 <= self.probability <= 1.0:
            raise ValueError(f"probability {self.probability} outside [0, 1]")
        if (kind == Kind.MEASURE_Z) != (self.classical_bit is not None):
            raise ValueError(f"{kind.value}: classical_bit given iff MEASURE_Z")

    def __str__(self) -> str:
        head = self.kind.value
        if self.probability is not None:
            head += f"({self.probability!r})"
        text = head + " " + " ".join(map(str, self.qubits))
        if self.classical_bit is not None:
            text += f" -> {self.classical_bit}"
        return text


def reset(q):
    return Instruction(Kind.RESET, (q,))


def gate(kind, *qs):
    return Instruction(Kind(kind), qs)


def measure(q, bit):
    return Instruction(Kind.MEASURE_Z, (q,), classical_bit=bit)


@dataclass(frozen=True)
class MeasRecord:
    """What a classical bit measured: link ``link`` in round ``round``.

    ``phase`` is the shift index; a z-block carries the index of the shift it closes.
    """

    round: int
    phase: int
    kind: Literal["plaquette", "z"]
    link: int
    plaquette: Optional[int] = None
    group: Optional[Literal["a", "b"]] = None


@dataclass(frozen=True)
class CircuitProgram:
    num_qubits: int
    num_bits: int
    instructions: tuple[Instruction, ...]
    meas_map: tuple[MeasRecord, ...] = ()
    rounds: int = 0
    num_shifts: int = 0

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        object.__setattr__(self, "meas_map", tuple(self.meas_map))
        bits = [i.classical_bit for i in self.instructions if i.kind == Kind.MEASURE_Z]
        if sorted(bits) != list(range(self.num_bits)):
            raise ValueError("every classical bit must be written by exactly one MEASURE_Z")
        if self.meas_map and len(self.meas_map) != self.num_bits:
            raise ValueError("meas_map must describe every classical bit")
        for inst in self.instructions:
            if max(inst.qubits) >= self.num_qubits:
                raise ValueError(f"{inst} addresses a qubit beyond {self.num_qubits}")

    @property
    def has_noise(self) -> bool:
        return any(i.kind.is_noise for i in self.instructions)

    def counts(self) -> Counter:
        return Counter(i.kind for i in self.instructions)

    def dump(self) -> str:
        """Plain-text IR, one instruction per line."""
        lines = [f"# qubits {self.num_qubits} bits {self.num_bits}"]
        lines += [str(i) for i in self.instructions]
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self, num_qubits: int):
        self.num_qubits = num_qubits
        self.instructions: list[Instruction] = []
        self.records: list[MeasRecord] = []

    def extend(self, insts: Iterable[Instruction]):
        self.instructions.extend(insts)

    def gadget(self, link: Link, record: MeasRecord):
        self.extend(parity_gadget(link, bit=len(self.records)))
        self.records.append(record)

    def program(self, **kw) -> CircuitProgram:
        return CircuitProgram(
            self.num_qubits, len(self.records), self.instructions, self.records, **kw
        )


# basis change taking the link Pauli to Z, and its inverse
_PRE = {"Z": (), "X": ("H",), "Y": ("S_DAG", "H")}
_POST = {"Z": (), "X": ("H",), "Y": ("H", "S")}


def parity_gadget(link: Link, bit: int = 0) -> list[Instruction]:
    """Measure ``link``'s two-body Pauli onto its auxiliary qubit.

    Outcome 0 means eigenvalue +1. A truncated link is a bare Z measurement of
    its single data qubit.
    """
    if link.truncated:
        return [measure(link.data_qubits[0], bit)]
    if link.aux_qubit is None:
        raise ValueError(f"link {link.id} has no auxiliary qubit")
    a, b = sorted(link.data_qubits)
    aux = link.aux_qubit
    out = [reset(aux)]
    for name in _PRE[link.link_type]:
        out += [gate(name, a), gate(name, b)]
    out += [gate("CX", a, aux), gate("CX", b, aux)]
    for name in _POST[link.link_type]:
        out += [gate(name, a), gate(name, b)]
    out.append(measure(aux, bit))
    return out


def _plaquette_block(b: _Builder, plaquette: Plaquette, code: CodeSpec, rnd: int):
    for group, ids in (("a", plaquette.group_a), ("b", plaquette.group_b)):
        for lid in sorted(ids):
            rec = MeasRecord(rnd, plaquette.shift, "plaquette", lid, plaquette.id, group)
            b.gadget(code.links[lid], rec)


def _z_block(b: _Builder, code: CodeSpec, rnd: int, phase: int):
    for lid in sorted(code.z_stabilizers):
        b.gadget(code.links[lid], MeasRecord(rnd, phase, "z", lid))


def plaquette_block(plaquette: Plaquette, code: CodeSpec, round: int = 0) -> CircuitProgram:
    """Group a gadgets (ascending link id), then group b, for one plaquette."""
    b = _Builder(code.layout.num_qubits)
    _plaquette_block(b, plaquette, code, round)
    return b.program()


def z_stabilizer_block(code: CodeSpec, round: int = 0, phase: int = 0) -> CircuitProgram:
    """One measurement of every z-stabilizer, ascending link id."""
    b = _Builder(code.layout.num_qubits)
    _z_block(b, code, round, phase)
    return b.program()


def build_experiment(code: CodeSpec, T: int = 3) -> CircuitProgram:
    """Reset everything, then ``T`` rounds of shift-ordered plaquette
    measurements, each shift closed by a full z-stabilizer block."""
    if T < 1:
        raise ValueError(f"need at least one round, got T={T}")
    b = _Builder(code.layout.num_qubits)
    b.extend(reset(q) for q in range(code.layout.num_qubits))
    shifts = code.shifts()
    for rnd in range(T):
        for s, members in enumerate(shifts):
            for p in sorted(members, key=lambda p: p.id):
                _plaquette_block(b, p, code, rnd)
            _z_block(b, code, rnd, s)
    return b.program(rounds=T, num_shifts=code.num_shifts)


def group_measurements_per_round(program: CircuitProgram) -> list[int]:
    """Number of distinct (plaquette, group) measurements in each round."""
    seen: list[set] = [set() for _ in range(program.rounds)]
    for rec in program.meas_map:
        if rec.kind == "plaquette":
            seen[rec.round].add((rec.plaquette, rec.group))
    return [len(s) for s in seen]


def concat(programs: Sequence[CircuitProgram], num_qubits: Optional[int] = None) -> CircuitProgram:
    """Join programs end to end, renumbering classical bits."""
    insts, records, offset = [], [], 0
    nq = num_qubits or max(p.num_qubits for p in programs)
    for p in programs:
        for i in p.instructions:
            if i.classical_bit is not None:
                i = measure(i.qubits[0], i.classical_bit + offset)
            insts.append(i)
        records += p.meas_map
        offset += p.num_bits
    if records and len(records) != offset:
        records = []
    return CircuitProgram(nq, offset, insts, records)
