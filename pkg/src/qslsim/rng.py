"""Seedable bit sources.

RngStream is a counter-based (Philox) generator addressed by a (seed, stream)
pair: the same pair always reproduces the same draws, distinct stream ids are
independent, so trials can be parallelized by handing each its own stream.
ConstantBits stands in for the random source when a run should be checked for
independence from the randomness (every "random" bit comes out 0 or 1).
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_BUF_WORDS = 4096


class RngStream:
    """Buffered random-bit source backed by Philox keyed with (seed, stream)."""

    __slots__ = ("seed", "stream", "_gen", "_buf", "_i")

    def __init__(self, seed: int, stream: int = 0):
        self.seed = seed & _MASK64
        self.stream = stream & _MASK64
        key = np.array([self.seed, self.stream], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))
        self._buf: list[int] = []
        self._i = 0

    @property
    def generator(self) -> np.random.Generator:
        """Underlying numpy Generator, for bulk array draws."""
        return self._gen

    def bit(self) -> int:
        return self.bits(1)

    def bits(self, n: int) -> int:
        """Return n fresh uniform bits packed into an int (bit 0 first)."""
        if n <= 64:
            if self._i >= len(self._buf):
                self._buf = self._gen.integers(
                    0, 1 << 64, size=_BUF_WORDS, dtype=np.uint64
                ).tolist()
                self._i = 0
            w = self._buf[self._i]
            self._i += 1
            return w & ((1 << n) - 1) if n < 64 else w
        v = int.from_bytes(self._gen.bytes((n + 7) // 8), "little")
        return v & ((1 << n) - 1)


class ConstantBits:
    """Degenerate bit source: every draw returns the given bit value."""

    __slots__ = ("value",)

    def __init__(self, value: int):
        if value not in (0, 1):
            raise ValueError("constant bit must be 0 or 1")
        self.value = value

    def bit(self) -> int:
        return self.value

    def bits(self, n: int) -> int:
        return ((1 << n) - 1) if self.value else 0


BitSource = RngStream | ConstantBits
