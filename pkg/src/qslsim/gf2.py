"""Linear algebra over GF(2) on packed bit vectors.

Bit i of a vector is bit i of an int (index 0 = least significant). The text
form is most-significant-first, so BitVec.from_text("101") has bits
(b0, b1, b2) = (1, 0, 1). All operations are pure: inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from ._kernels import rref_words


@dataclass(frozen=True)
class BitVec:
    value: int
    width: int

    def __post_init__(self):
        if self.width < 0 or not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    @classmethod
    def zeros(cls, width: int) -> "BitVec":
        return cls(0, width)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVec":
        """Build from bits in index order (bits[0] is index 0)."""
        v = 0
        w = 0
        for bit in bits:
            v |= (bit & 1) << w
            w += 1
        return cls(v, w)

    @classmethod
    def from_text(cls, text: str) -> "BitVec":
        return cls(int(text, 2) if text else 0, len(text))

    @property
    def text(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""

    def bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise IndexError(i)
        return (self.value >> i) & 1

    __getitem__ = bit

    def bits(self) -> list[int]:
        return [(self.value >> i) & 1 for i in range(self.width)]

    def weight(self) -> int:
        return self.value.bit_count()

    def __len__(self) -> int:
        return self.width

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits())

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class BitMatrix:
    rows: tuple[int, ...]
    width: int

    def __post_init__(self):
        for r in self.rows:
            if not 0 <= r < (1 << self.width):
                raise ValueError(f"row {r} out of range for width {self.width}")

    @classmethod
    def from_bitvecs(cls, vecs: Iterable[BitVec], width: int | None = None) -> "BitMatrix":
        vecs = list(vecs)
        if width is None:
            if not vecs:
                raise ValueError("width required for an empty matrix")
            width = vecs[0].width
        if any(v.width != width for v in vecs):
            raise ValueError("mixed row widths")
        return cls(tuple(v.value for v in vecs), width)

    @classmethod
    def from_text_rows(cls, rows: Iterable[str]) -> "BitMatrix":
        return cls.from_bitvecs([BitVec.from_text(r) for r in rows])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> BitVec:
        return BitVec(self.rows[i], self.width)

    def bitvecs(self) -> list[BitVec]:
        return [BitVec(r, self.width) for r in self.rows]


def dot(u: BitVec, v: BitVec) -> int:
    """Bitwise dot product mod 2."""
    if u.width != v.width:
        raise ValueError("width mismatch")
    return (u.value & v.value).bit_count() & 1


def xor(u: BitVec, v: BitVec) -> BitVec:
    if u.width != v.width:
        raise ValueError("width mismatch")
    return BitVec(u.value ^ v.value, u.width)


def _to_words(rows: tuple[int, ...], width: int) -> np.ndarray:
    nwords = max(1, (width + 63) // 64)
    mat = np.empty((len(rows), nwords), dtype=np.uint64)
    nbytes = nwords * 8
    for i, r in enumerate(rows):
        mat[i] = np.frombuffer(r.to_bytes(nbytes, "little"), dtype=np.uint64)
    return mat


def _from_words(row: np.ndarray) -> int:
    return int.from_bytes(row.tobytes(), "little")


def _reduce(m: BitMatrix) -> tuple[list[int], list[int]]:
    """Return (nonzero reduced rows, pivot columns)."""
    if not m.rows:
        return [], []
    mat = _to_words(m.rows, m.width)
    pivots = rref_words(mat, m.width)
    reduced = [_from_words(mat[i]) for i in range(len(pivots))]
    return reduced, [int(p) for p in pivots]


def rank(m: BitMatrix) -> int:
    return len(_reduce(m)[1])


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """Basis of {v : m v = 0 over GF(2)}; dimension is width - rank."""
    reduced, pivots = _reduce(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.width) if c not in pivot_set]
    basis = []
    for f in free:
        v = 1 << f
        for r, p in zip(reduced, pivots):
            if (r >> f) & 1:
                v |= 1 << p
        basis.append(v)
    return BitMatrix(tuple(basis), m.width)


def orthogonal_complement_basis(s: BitVec) -> BitMatrix:
    """Deterministic basis of the subspace orthogonal to s.

    n rows when s = 0, else n - 1. Construction: with j* the lowest set bit
    of s, take e_i for every other index i with s_i = 0, and e_i + e_j* where
    s_i = 1. Each row has dot product s_i + s_i = 0 with s.
    """
    n = s.width
    if s.value == 0:
        return BitMatrix(tuple(1 << i for i in range(n)), n)
    j = (s.value & -s.value).bit_length() - 1
    rows = []
    for i in range(n):
        if i == j:
            continue
        r = 1 << i
        if (s.value >> i) & 1:
            r |= 1 << j
        rows.append(r)
    return BitMatrix(tuple(rows), n)


def solve_secret(ys: BitMatrix) -> BitVec | None:
    """Solve ys * s = 0 for the hidden string.

    Returns the unique nonzero solution when rank = width - 1, the zero
    vector when rank = width (only the trivial solution exists), and None
    when the system is still underdetermined and more rows are needed.
    """
    n = ys.width
    r = rank(ys)
    if r == n:
        return BitVec.zeros(n)
    if r < n - 1:
        return None
    basis = nullspace_basis(ys)
    return basis.row(0)
