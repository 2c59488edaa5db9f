"""Sparse symbolic Pauli strings with exact phases.

Used for the algebraic checks on plaquette and link operators; the simulator
has its own bit-packed representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

# single-qubit products: (a, b) -> (phase exponent of i, result)
_PRODUCT = {
    ("X", "Y"): (1, "Z"),
    ("Y", "Z"): (1, "X"),
    ("Z", "X"): (1, "Y"),
    ("Y", "X"): (3, "Z"),
    ("Z", "Y"): (3, "X"),
    ("X", "Z"): (3, "Y"),
}


def _mul1(a: str, b: str) -> tuple[int, str]:
    if a == "I":
        return 0, b
    if b == "I":
        return 0, a
    if a == b:
        return 0, "I"
    return _PRODUCT[(a, b)]


@dataclass(frozen=True)
class PauliString:
    """A Pauli operator ``i**phase * prod_q ops[q]`` on named qubits."""

    ops: Mapping[int, str] = field(default_factory=dict)
    phase: int = 0

    def __post_init__(self):
        clean = {}
        for q, p in self.ops.items():
            p = p.upper()
            if p not in "IXYZ" or len(p) != 1:
                raise ValueError(f"bad Pauli letter {p!r} on qubit {q}")
            if p != "I":
                clean[int(q)] = p
        object.__setattr__(self, "ops", dict(sorted(clean.items())))
        object.__setattr__(self, "phase", self.phase % 4)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, str]], phase: int = 0) -> "PauliString":
        """Build from ``(qubit, letter)`` pairs, multiplying repeated qubits left to right."""
        out = cls({}, phase)
        for q, p in pairs:
            out = out * cls({q: p})
        return out

    @classmethod
    def link(cls, letter: str, qubits: Iterable[int]) -> "PauliString":
        return cls.from_pairs((q, letter) for q in qubits)

    def __mul__(self, other: "PauliString") -> "PauliString":
        ops = dict(self.ops)
        phase = self.phase + other.phase
        for q, b in other.ops.items():
            k, r = _mul1(ops.get(q, "I"), b)
            phase += k
            ops[q] = r
        return PauliString(ops, phase)

    def commutes(self, other: "PauliString") -> bool:
        # symplectic form: count sites where both act non-trivially and differ
        clash = sum(
            1 for q, a in self.ops.items() if q in other.ops and other.ops[q] != a
        )
        return clash % 2 == 0

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.ops)

    def __str__(self) -> str:
        sign = ["+", "+i", "-", "-i"][self.phase]
        body = " ".join(f"{p}{q}" for q, p in self.ops.items()) or "I"
        return f"{sign}{body}"


def product(paulis: Iterable[PauliString]) -> PauliString:
    out = PauliString()
    for p in paulis:
        out = out * p
    return out
