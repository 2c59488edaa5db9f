"""Shot tables and their on-disk formats."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

_MAGIC = b"HXST"
_HEADER = struct.Struct("<4sQQ")


@dataclass(frozen=True, eq=False)
class ShotTable:
    """Measurement record: ``bits[shot, classical_bit]`` in {0, 1}."""

    bits: np.ndarray

    def __post_init__(self):
        bits = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValueError("bits must be a (shots, num_bits) matrix")
        if bits.size and bits.max() > 1:
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @property
    def num_shots(self) -> int:
        return self.bits.shape[0]

    @property
    def num_bits(self) -> int:
        return self.bits.shape[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, ShotTable) and np.array_equal(self.bits, other.bits)

    def to_bytes(self) -> bytes:
        packed = np.packbits(self.bits.ravel(), bitorder="little")
        return _HEADER.pack(_MAGIC, self.num_shots, self.num_bits) + packed.tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "ShotTable":
        if len(data) < _HEADER.size:
            raise ValueError("shot-table data shorter than its header")
        magic, shots, nbits = _HEADER.unpack_from(data)
        if magic != _MAGIC:
            raise ValueError("not a shot-table file")
        raw = np.frombuffer(data, np.uint8, offset=_HEADER.size)
        if raw.size != (shots * nbits + 7) // 8:
            raise ValueError(f"expected {(shots * nbits + 7) // 8} payload bytes, got {raw.size}")
        flat = np.unpackbits(raw, count=shots * nbits, bitorder="little")
        return cls(flat.reshape(shots, nbits))

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ShotTable":
        return cls.from_bytes(Path(path).read_bytes())

    def to_csv(self) -> str:
        return "".join("".join("01"[b] for b in row) + "\n" for row in self.bits)

    @classmethod
    def from_csv(cls, text: str) -> "ShotTable":
        rows = [line.strip() for line in text.splitlines() if line.strip()]
        return cls(np.array([[int(c) for c in row] for row in rows], dtype=np.uint8))
