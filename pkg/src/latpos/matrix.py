"""Rectangular matrices over :class:`MultiPoly`."""

from __future__ import annotations

import csv
import io
from typing import Callable, Iterable, Sequence

from .errors import OutOfBounds
from .polyalg import ONE, ZERO, MultiPoly, render


class PolyMatrix:
    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(MultiPoly.coerce(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(data)
        self.cols = cols
        self._e = data

    @classmethod
    def build(cls, rows: int, cols: int, fn: Callable[[int, int], object]) -> "PolyMatrix":
        return cls([[fn(i, j) for j in range(cols)] for i in range(rows)], cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls.build(n, n, lambda i, j: ONE if i == j else ZERO)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> MultiPoly:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise OutOfBounds(f"index ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return self._e[i][j]

    def row(self, i: int) -> tuple[MultiPoly, ...]:
        return self._e[i]

    def tolist(self) -> list[list[MultiPoly]]:
        return [list(r) for r in self._e]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.build(self.cols, self.rows, lambda i, j: self._e[j][i])

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        for i in rows:
            if not 0 <= i < self.rows:
                raise OutOfBounds(f"row {i} out of range")
        for j in cols:
            if not 0 <= j < self.cols:
                raise OutOfBounds(f"column {j} out of range")
        return PolyMatrix([[self._e[i][j] for j in cols] for i in rows], len(cols))

    def window(self, rows: int, cols: int) -> "PolyMatrix":
        return self.submatrix(range(rows), range(cols))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for i in range(self.rows):
            ri = self._e[i]
            nz = [(k, ri[k]) for k in range(self.cols) if ri[k]]
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k, v in nz:
                    w = other._e[k][j]
                    if w:
                        acc = acc + v * w
                row.append(acc)
            out.append(row)
        return PolyMatrix(out, other.cols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return PolyMatrix.build(self.rows, self.cols, lambda i, j: self._e[i][j] + other._e[i][j])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash(self._e)

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix([[fn(x) for x in r] for r in self._e], self.cols)

    def is_numeric(self) -> bool:
        return all(x.is_constant() for r in self._e for x in r)

    def first_difference(self, other: "PolyMatrix"):
        """First (i, j) where the two matrices differ, or None."""
        if self.shape != other.shape:
            return ("shape", self.shape, other.shape)
        for i in range(self.rows):
            for j in range(self.cols):
                if self._e[i][j] != other._e[i][j]:
                    return (i, j)
        return None

    # -- output ----------------------------------------------------------

    def to_strings(self) -> list[list[str]]:
        return [[render(x) for x in r] for r in self._e]

    def to_json(self) -> list[list[str]]:
        return self.to_strings()

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for r in self.to_strings():
            w.writerow(r)
        return buf.getvalue()

    def __repr__(self) -> str:
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"PolyMatrix[{self.rows}x{self.cols}]({body})"
