"""Exact linear algebra over GF(2): bit matrices, rank, span membership.

Entries live in {0, 1} with XOR addition.  Matrices up to 62 columns
take a packed bitmask fast path through the kernel backend; wider ones
fall back to dense uint8 elimination.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from indexcode import _kernels

RowLike = Union[str, Sequence[int], int]

__all__ = ["BitMatrix", "rank", "in_span", "stack"]


def _row_to_bits(row: RowLike) -> list[int]:
    if isinstance(row, str):
        if not set(row) <= {"0", "1"}:
            raise ValueError(f"row string must be over 0/1, got {row!r}")
        return [int(ch) for ch in row]
    return [int(b) & 1 for b in row]


class BitMatrix:
    """Immutable dense GF(2) matrix; column 0 is the leftmost position."""

    __slots__ = ("_data",)

    def __init__(self, data: np.ndarray):
        arr = np.asarray(data, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise ValueError("BitMatrix needs a 2-D array")
        arr.setflags(write=False)
        self._data = arr

    @classmethod
    def from_rows(cls, rows: Iterable[RowLike], cols: int | None = None) -> "BitMatrix":
        """Build from bit strings or 0/1 sequences; cols required when empty."""
        bit_rows = [_row_to_bits(r) for r in rows]
        if not bit_rows:
            if cols is None:
                raise ValueError("cols is required for an empty row list")
            return cls(np.zeros((0, cols), dtype=np.uint8))
        widths = {len(r) for r in bit_rows}
        if len(widths) != 1:
            raise ValueError(f"rows have mixed widths {sorted(widths)}")
        if cols is not None and widths != {cols}:
            raise ValueError(f"rows have width {widths.pop()}, expected {cols}")
        return cls(np.array(bit_rows, dtype=np.uint8))

    @classmethod
    def from_masks(cls, masks: Iterable[int], cols: int) -> "BitMatrix":
        """Build from int bitmasks, bit j = column j."""
        rows = [[(m >> j) & 1 for j in range(cols)] for m in masks]
        if not rows:
            return cls(np.zeros((0, cols), dtype=np.uint8))
        return cls(np.array(rows, dtype=np.uint8))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(np.eye(n, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return int(self._data.shape[0])

    @property
    def cols(self) -> int:
        return int(self._data.shape[1])

    @property
    def bits(self) -> np.ndarray:
        """Row-major flat copy of the entries."""
        return self._data.reshape(-1).copy()

    @property
    def array(self) -> np.ndarray:
        return self._data

    def to_masks(self) -> list[int]:
        """Rows as int bitmasks, bit j = column j."""
        out = []
        for r in range(self.rows):
            m = 0
            row = self._data[r]
            for j in range(self.cols):
                if row[j]:
                    m |= 1 << j
            out.append(m)
        return out

    def row_strings(self) -> list[str]:
        return ["".join("1" if b else "0" for b in row) for row in self._data]

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self._data.T.copy())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BitMatrix) and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self._data.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, {self.row_strings()})"


def rank(matrix: BitMatrix) -> int:
    """GF(2) row rank; 0 for an empty matrix."""
    if matrix.rows == 0 or matrix.cols == 0:
        return 0
    if matrix.cols < _kernels.MAX_BITS:
        return int(_kernels.rank_masks(np.array(matrix.to_masks(), dtype=np.int64)))
    return int(_kernels.rank_dense(matrix.array.copy()))


def in_span(vector: RowLike, basis: BitMatrix) -> bool:
    """True iff vector is a GF(2) combination of the basis rows."""
    bits = _row_to_bits(vector)
    if len(bits) != basis.cols:
        raise ValueError(
            f"vector has length {len(bits)}, basis has {basis.cols} columns"
        )
    if not any(bits):
        return True
    if basis.cols < _kernels.MAX_BITS:
        v = 0
        for j, b in enumerate(bits):
            if b:
                v |= 1 << j
        return bool(
            _kernels.in_span_masks(v, np.array(basis.to_masks(), dtype=np.int64))
        )
    stacked = np.vstack([basis.array, np.array(bits, dtype=np.uint8)])
    return int(_kernels.rank_dense(stacked)) == rank(basis)


def stack(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Vertical concatenation; the operands must share a column count."""
    if a.cols != b.cols:
        raise ValueError(f"column mismatch: {a.cols} vs {b.cols}")
    return BitMatrix(np.vstack([a.array, b.array]))
