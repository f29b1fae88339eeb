"""Bijections of {0..2^m-1} in two interchangeable forms.

TablePerm is an explicit lookup table, only sensible for small m. CircuitPerm
is a reversible X/CNOT/TOFFOLI gate list, which scales to hundreds of
thousands of wires; it defines a bijection by construction and inverts by
reversing the gate order (every gate is self-inverse). Both act on the
computational plane only and leave phase bits alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._kernels import (
    OP_CNOT,
    OP_TOFFOLI,
    OP_X,
    run_classical_ops,
    run_classical_ops_sliced,
)

TABLE_WIDTH_MAX = 20

# Sub-word bit patterns for columns 0..5 of the bit-sliced input matrix.
_PAT = [
    sum(1 << p for p in range(64) if (p >> j) & 1) for j in range(6)
]


@dataclass(frozen=True)
class TablePerm:
    mapping: tuple[int, ...]
    _inverse: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        size = len(self.mapping)
        if size == 0 or size & (size - 1):
            raise ValueError("table size must be a power of two")
        if size > (1 << TABLE_WIDTH_MAX):
            raise ValueError("table too large; use a circuit form")
        if sorted(self.mapping) != list(range(size)):
            raise ValueError("mapping is not a bijection")

    @property
    def width(self) -> int:
        return (len(self.mapping) - 1).bit_length() if len(self.mapping) > 1 else 1

    def inverse(self) -> "TablePerm":
        inv = self._inverse
        if inv is None:
            inv = [0] * len(self.mapping)
            for i, v in enumerate(self.mapping):
                inv[v] = i
            inv = tuple(inv)
        return TablePerm(inv, self.mapping)

    def apply_int(self, v: int) -> int:
        return self.mapping[v]

    def apply_plane(self, z: int, start: int = 0) -> int:
        mask = (1 << self.width) - 1
        v = (z >> start) & mask
        return z ^ ((v ^ self.mapping[v]) << start)

    def as_table(self) -> tuple[int, ...]:
        return self.mapping

    def to_json_dict(self) -> dict:
        return {"form": "table", "table": list(self.mapping)}


@dataclass(frozen=True)
class CircuitPerm:
    width: int
    codes: np.ndarray  # int64 gate codes (OP_X / OP_CNOT / OP_TOFFOLI)
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    seed: int | None = None   # generation provenance, for compact serialization
    depth: int | None = None

    def __post_init__(self):
        for arr in (self.codes, self.a, self.b, self.c):
            if arr.dtype != np.int64:
                raise ValueError("gate arrays must be int64")

    def __eq__(self, other):
        return (
            isinstance(other, CircuitPerm)
            and self.width == other.width
            and all(
                np.array_equal(p, q)
                for p, q in zip(
                    (self.codes, self.a, self.b, self.c),
                    (other.codes, other.a, other.b, other.c),
                )
            )
        )

    @property
    def ngates(self) -> int:
        return int(self.codes.shape[0])

    def inverse(self) -> "CircuitPerm":
        return CircuitPerm(
            self.width,
            self.codes[::-1].copy(),
            self.a[::-1].copy(),
            self.b[::-1].copy(),
            self.c[::-1].copy(),
        )

    def apply_plane(self, z: int, start: int = 0, total_width: int | None = None) -> int:
        n = total_width if total_width is not None else start + self.width
        nwords = max(1, (n + 63) // 64)
        words = np.frombuffer(z.to_bytes(nwords * 8, "little"), dtype=np.uint64).copy()
        run_classical_ops(self.codes, self.a, self.b, self.c, words, start)
        return int.from_bytes(words.tobytes(), "little")

    def apply_int(self, v: int) -> int:
        return self.apply_plane(v)

    def as_table(self) -> tuple[int, ...]:
        """Tabulate by bit-sliced evaluation of all 2^width inputs at once."""
        m = self.width
        if m > TABLE_WIDTH_MAX:
            raise ValueError("circuit too wide to tabulate")
        size = 1 << m
        nwords = max(1, size >> 6)
        cols = np.zeros((m, nwords), dtype=np.uint64)
        for j in range(m):
            if j < 6:
                if size >= 64:
                    cols[j, :] = np.uint64(_PAT[j])
                else:
                    cols[j, 0] = np.uint64(_PAT[j] & ((1 << size) - 1))
            else:
                w = np.arange(nwords, dtype=np.uint64)
                cols[j, :] = np.where((w >> np.uint64(j - 6)) & np.uint64(1), ~np.uint64(0), np.uint64(0))
        run_classical_ops_sliced(self.codes, self.a, self.b, self.c, cols)
        table = np.zeros(size, dtype=np.int64)
        for j in range(m):
            bits = np.unpackbits(cols[j].view(np.uint8), bitorder="little")[:size]
            table |= bits.astype(np.int64) << j
        return tuple(int(v) for v in table)

    def to_json_dict(self) -> dict:
        if self.seed is not None and self.depth is not None:
            return {"form": "circuit", "seed": self.seed, "depth": self.depth}
        return {
            "form": "circuit_ops",
            "ops": np.stack([self.codes, self.a, self.b, self.c], axis=1).tolist(),
        }


PermSpec = TablePerm | CircuitPerm


def identity_perm(width: int) -> PermSpec:
    if width <= 12:
        return TablePerm(tuple(range(1 << width)))
    e = np.empty(0, dtype=np.int64)
    return CircuitPerm(width, e, e.copy(), e.copy(), e.copy())


def random_table_perm(width: int, gen: np.random.Generator) -> TablePerm:
    if width > 12:
        raise ValueError("table perms are kept small; use random_circuit_perm")
    return TablePerm(tuple(int(v) for v in gen.permutation(1 << width)))


def random_circuit_perm(width: int, ngates: int, seed: int) -> CircuitPerm:
    """Random reversible circuit, reproducible from (width, ngates, seed)."""
    gen = np.random.Generator(
        np.random.Philox(key=np.array([seed & ((1 << 64) - 1), 0x7065726D], dtype=np.uint64))
    )
    if width >= 3:
        codes_pool = np.array([OP_X, OP_CNOT, OP_TOFFOLI], dtype=np.int64)
    elif width == 2:
        codes_pool = np.array([OP_X, OP_CNOT], dtype=np.int64)
    else:
        codes_pool = np.array([OP_X], dtype=np.int64)
    codes = codes_pool[gen.integers(0, len(codes_pool), size=ngates)]
    a = gen.integers(0, width, size=ngates, dtype=np.int64)
    if width >= 2:
        b = (a + 1 + gen.integers(0, width - 1, size=ngates, dtype=np.int64)) % width
        c = (a + 1 + gen.integers(0, width - 1, size=ngates, dtype=np.int64)) % width
        clash = c == b
        while np.any(clash):
            c[clash] = (a[clash] + 1 + gen.integers(0, width - 1, size=int(clash.sum()), dtype=np.int64)) % width
            clash = c == b
    else:
        b = np.zeros(ngates, dtype=np.int64)
        c = np.zeros(ngates, dtype=np.int64)
    return CircuitPerm(width, codes, a, b, c, seed=seed, depth=ngates)


def default_circuit_gates(width: int, factor: float = 10.0) -> int:
    """Default gate count for a generated circuit: factor * n * log2(n + 1)."""
    return max(1, round(factor * width * np.log2(width + 1)))


def perm_from_json_dict(d: dict, width: int) -> PermSpec:
    form = d.get("form")
    if form == "table":
        return TablePerm(tuple(d["table"]))
    if form == "circuit":
        return random_circuit_perm(width, int(d["depth"]), int(d["seed"]))
    if form == "circuit_ops":
        ops = np.array(d["ops"], dtype=np.int64).reshape(-1, 4)
        return CircuitPerm(width, ops[:, 0].copy(), ops[:, 1].copy(), ops[:, 2].copy(), ops[:, 3].copy())
    raise ValueError(f"unknown permutation form: {form!r}")
