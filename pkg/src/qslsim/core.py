"""Elementary simulated systems: paired-bit registers, gates, measurement.

Each simulated qubit is a pair of classical bits: a computational bit read by
z-measurement and a phase bit read by x-measurement. A register of n such
pairs is stored as two n-bit integer planes (bit i of each plane belongs to
position i, index 0 least significant). Measuring one plane randomizes the
other at the measured positions, so at most one bit of information comes out
of each pair.

Gate semantics on (z, x) pairs:
  X flips z, Z flips x, H swaps z and x, so XX = ZZ = HH = I and HZH = X.
  CNOT xors the control's z into the target's z and, in the reverse
  direction, the target's x into the control's x (the coupling that carries
  phase kickback). TOFFOLI ands two z bits into a third and leaves every
  phase bit alone, as does a permutation gate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import OP_CNOT, OP_H, OP_TOFFOLI, OP_X, OP_Z, run_pair_ops
from .gf2 import BitVec
from .perms import CircuitPerm, PermSpec, TablePerm
from .rng import BitSource


@dataclass(frozen=True)
class QslBit:
    """One simulated system: computational bit z, phase bit x."""

    z: int
    x: int

    def __post_init__(self):
        if self.z not in (0, 1) or self.x not in (0, 1):
            raise ValueError("bits must be 0 or 1")


class QslRegister:
    """Fixed-length register of paired bits, planes packed as ints."""

    __slots__ = ("n", "z", "x")

    def __init__(self, n: int, z: int = 0, x: int = 0):
        if n < 0:
            raise ValueError("negative width")
        mask = (1 << n) - 1
        if z & ~mask or x & ~mask:
            raise ValueError("plane value exceeds register width")
        self.n = n
        self.z = z
        self.x = x

    @classmethod
    def prepare_z(cls, values: BitVec, rng: BitSource) -> "QslRegister":
        """Computational preparation: z plane as given, phase plane random."""
        return cls(values.width, values.value, rng.bits(values.width))

    @classmethod
    def prepare_full(cls, z_values: BitVec, x_values: BitVec) -> "QslRegister":
        """Set both planes exactly; consumes no randomness."""
        if z_values.width != x_values.width:
            raise ValueError("plane width mismatch")
        return cls(z_values.width, z_values.value, x_values.value)

    def copy(self) -> "QslRegister":
        return QslRegister(self.n, self.z, self.x)

    def bit(self, i: int) -> QslBit:
        self._check_index(i)
        return QslBit((self.z >> i) & 1, (self.x >> i) & 1)

    @property
    def z_bits(self) -> BitVec:
        return BitVec(self.z, self.n)

    @property
    def x_bits(self) -> BitVec:
        return BitVec(self.x, self.n)

    def _check_index(self, i: int):
        if not 0 <= i < self.n:
            raise IndexError(f"index {i} out of range for width {self.n}")

    # -- gates ------------------------------------------------------------

    def apply_x(self, i: int):
        self._check_index(i)
        self.z ^= 1 << i

    def apply_z(self, i: int):
        self._check_index(i)
        self.x ^= 1 << i

    def apply_h(self, i: int):
        self._check_index(i)
        m = 1 << i
        if bool(self.z & m) != bool(self.x & m):
            self.z ^= m
            self.x ^= m

    def apply_h_all(self):
        self.z, self.x = self.x, self.z

    def apply_cnot(self, control: int, target: int):
        self._check_index(control)
        self._check_index(target)
        if control == target:
            raise ValueError("control and target must differ")
        if (self.z >> control) & 1:
            self.z ^= 1 << target
        if (self.x >> target) & 1:
            self.x ^= 1 << control

    def apply_toffoli(self, c1: int, c2: int, target: int):
        self._check_index(c1)
        self._check_index(c2)
        self._check_index(target)
        if len({c1, c2, target}) != 3:
            raise ValueError("toffoli wires must be distinct")
        if (self.z >> c1) & (self.z >> c2) & 1:
            self.z ^= 1 << target

    def apply_perm(self, spec: PermSpec, start: int = 0):
        """Map the computational bits in [start, start+width) through spec."""
        if start < 0 or start + spec.width > self.n:
            raise IndexError("permutation wires out of range")
        if isinstance(spec, TablePerm):
            self.z = spec.apply_plane(self.z, start)
        else:
            self.z = spec.apply_plane(self.z, start, total_width=self.n)

    def apply_circuit(self, circuit: "Circuit"):
        if circuit.width != self.n:
            raise ValueError("circuit width does not match register")
        circuit.run(self)

    # -- measurement ------------------------------------------------------

    def measure_z(self, rng: BitSource, indices: list[int] | None = None) -> BitVec:
        """Read computational bits; the phase bit of each read position is
        redrawn from rng. Unmeasured positions are untouched."""
        if indices is None:
            out = self.z
            self.x = rng.bits(self.n)
            return BitVec(out, self.n)
        self._check_measure_indices(indices)
        out = 0
        for j, i in enumerate(indices):
            out |= ((self.z >> i) & 1) << j
            if rng.bit():
                self.x |= 1 << i
            else:
                self.x &= ~(1 << i)
        return BitVec(out, len(indices))

    def measure_x(self, rng: BitSource, indices: list[int] | None = None) -> BitVec:
        """Mirror of measure_z with the planes swapped."""
        if indices is None:
            out = self.x
            self.z = rng.bits(self.n)
            return BitVec(out, self.n)
        self._check_measure_indices(indices)
        out = 0
        for j, i in enumerate(indices):
            out |= ((self.x >> i) & 1) << j
            if rng.bit():
                self.z |= 1 << i
            else:
                self.z &= ~(1 << i)
        return BitVec(out, len(indices))

    def _check_measure_indices(self, indices):
        for i in indices:
            self._check_index(i)
        if len(set(indices)) != len(indices):
            raise ValueError("duplicate measurement indices")


def cnot_across(control_reg: QslRegister, control: int, target_reg: QslRegister, target: int):
    """CNOT whose control and target live in different registers."""
    if control_reg is target_reg:
        control_reg.apply_cnot(control, target)
        return
    control_reg._check_index(control)
    target_reg._check_index(target)
    if (control_reg.z >> control) & 1:
        target_reg.z ^= 1 << target
    if (target_reg.x >> target) & 1:
        control_reg.x ^= 1 << control


# -- symbolic circuits ----------------------------------------------------

_PRIMITIVE_CODES = {"x": OP_X, "z": OP_Z, "h": OP_H, "cnot": OP_CNOT, "toffoli": OP_TOFFOLI}
_ARITY = {"x": 1, "z": 1, "h": 1, "cnot": 2, "toffoli": 3}


@dataclass(frozen=True)
class GateOp:
    kind: str
    wires: tuple[int, ...]
    perm: PermSpec | None = None

    def __post_init__(self):
        if self.kind == "perm":
            if self.perm is None or len(self.wires) != 1:
                raise ValueError("perm op needs a spec and a start wire")
        elif self.kind in _ARITY:
            if len(self.wires) != _ARITY[self.kind] or self.perm is not None:
                raise ValueError(f"bad wires for {self.kind}")
            if len(set(self.wires)) != len(self.wires):
                raise ValueError("gate wires must be distinct")
        else:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if any(w < 0 for w in self.wires):
            raise ValueError("negative wire index")

    def max_wire(self) -> int:
        if self.kind == "perm":
            return self.wires[0] + self.perm.width - 1
        return max(self.wires)

    def inverse(self) -> "GateOp":
        if self.kind == "perm":
            return GateOp("perm", self.wires, self.perm.inverse())
        return self  # X, Z, H, CNOT, TOFFOLI are self-inverse


def x_gate(i: int) -> GateOp:
    return GateOp("x", (i,))


def z_gate(i: int) -> GateOp:
    return GateOp("z", (i,))


def h_gate(i: int) -> GateOp:
    return GateOp("h", (i,))


def cnot(control: int, target: int) -> GateOp:
    return GateOp("cnot", (control, target))


def toffoli(c1: int, c2: int, target: int) -> GateOp:
    return GateOp("toffoli", (c1, c2, target))


def perm_gate(spec: PermSpec, start: int = 0) -> GateOp:
    return GateOp("perm", (start,), spec)


class Circuit:
    """Ordered gate sequence over a fixed number of wires."""

    def __init__(self, width: int, ops: list[GateOp] | tuple[GateOp, ...] = ()):
        self.width = width
        self.ops = tuple(ops)
        for op in self.ops:
            if op.max_wire() >= width:
                raise ValueError(f"op {op} exceeds circuit width {width}")
        self._segments = None

    def reversed_(self) -> "Circuit":
        return Circuit(self.width, [op.inverse() for op in reversed(self.ops)])

    def _compile(self):
        # Runs of primitive gates become int64 arrays for the kernel; a perm
        # op ends the current run.
        segments = []
        run: list[GateOp] = []

        def flush():
            if not run:
                return
            g = len(run)
            codes = np.empty(g, dtype=np.int64)
            a = np.zeros(g, dtype=np.int64)
            b = np.zeros(g, dtype=np.int64)
            c = np.zeros(g, dtype=np.int64)
            for i, op in enumerate(run):
                codes[i] = _PRIMITIVE_CODES[op.kind]
                a[i] = op.wires[0]
                if len(op.wires) > 1:
                    b[i] = op.wires[1]
                if len(op.wires) > 2:
                    c[i] = op.wires[2]
            segments.append(("ops", codes, a, b, c))
            run.clear()

        for op in self.ops:
            if op.kind == "perm":
                flush()
                segments.append(("perm", op.perm, op.wires[0]))
            else:
                run.append(op)
        flush()
        return segments

    def run(self, reg: QslRegister):
        if self._segments is None:
            self._segments = self._compile()
        nwords = max(1, (reg.n + 63) // 64)
        for seg in self._segments:
            if seg[0] == "ops":
                _, codes, a, b, c = seg
                z = np.frombuffer(reg.z.to_bytes(nwords * 8, "little"), dtype=np.uint64).copy()
                x = np.frombuffer(reg.x.to_bytes(nwords * 8, "little"), dtype=np.uint64).copy()
                run_pair_ops(codes, a, b, c, z, x)
                reg.z = int.from_bytes(z.tobytes(), "little")
                reg.x = int.from_bytes(x.tobytes(), "little")
            else:
                _, spec, start = seg
                reg.apply_perm(spec, start)
