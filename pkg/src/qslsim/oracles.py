"""Query-counting oracle construction for the two algorithms.

An oracle wraps a function as an opaque gate: callers may apply it to
registers or ask for a single classical function value, and every use bumps
query_count by one. The wrapped spec is private; solvers see only the public
surface.

The balanced decision-problem oracle routes the query through a permutation,
couples the top wire to the one-bit target, and routes back, so the only
phase-plane effect is on the top query wire. The hidden-shift oracle computes
inner products of the query with a basis of the subspace orthogonal to the
secret into an internal ancilla, permutes, copies out to the answer register,
then uncomputes; the ancilla's computational bits end every call exactly
where they started, while the answer register's phase bits are pushed back
onto the query's phase plane as a combination of the basis rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import QslRegister, cnot_across
from .gf2 import BitVec, orthogonal_complement_basis
from .perms import (
    CircuitPerm,
    PermSpec,
    TablePerm,
    default_circuit_gates,
    perm_from_json_dict,
    random_circuit_perm,
    random_table_perm,
)
from .rng import BitSource, RngStream

KIND_CONSTANT0 = "constant0"
KIND_CONSTANT1 = "constant1"
KIND_BALANCED = "balanced"

TABLE_PERM_MAX_N = 12


@dataclass(frozen=True)
class DjOracleSpec:
    n: int
    kind: str
    perm: PermSpec | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.kind == KIND_BALANCED:
            if self.perm is None or self.perm.width != self.n:
                raise ValueError("balanced kind needs a width-n permutation")
        elif self.kind in (KIND_CONSTANT0, KIND_CONSTANT1):
            if self.perm is not None:
                raise ValueError("constant kinds take no permutation")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        d = {"type": "dj", "n": self.n, "kind": self.kind}
        if self.perm is not None:
            d["perm"] = self.perm.to_json_dict()
        return d


@dataclass(frozen=True)
class SimonOracleSpec:
    n: int
    secret: BitVec
    perm: PermSpec

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.secret.width != self.n:
            raise ValueError("secret width must equal n")
        if self.perm.width != self.n:
            raise ValueError("permutation width must equal n")

    def to_json_dict(self) -> dict:
        return {
            "type": "simon",
            "n": self.n,
            "secret": self.secret.text,
            "perm": self.perm.to_json_dict(),
        }


OracleSpec = DjOracleSpec | SimonOracleSpec


def spec_from_json_dict(d: dict) -> OracleSpec:
    kind = d.get("type")
    n = int(d["n"])
    if kind == "dj":
        perm = perm_from_json_dict(d["perm"], n) if "perm" in d else None
        return DjOracleSpec(n, d["kind"], perm)
    if kind == "simon":
        return SimonOracleSpec(n, BitVec.from_text(d["secret"]), perm_from_json_dict(d["perm"], n))
    raise ValueError(f"unknown oracle spec type {kind!r}")


class Oracle:
    """Black-box base: width of the query register plus a call counter."""

    __slots__ = ("n", "query_count")

    def __init__(self, n: int):
        self.n = n
        self.query_count = 0


def _perm_int_fns(perm: PermSpec, width: int):
    """Forward/backward application of a permutation to an int plane."""
    if isinstance(perm, TablePerm):
        return perm.mapping.__getitem__, perm.inverse().mapping.__getitem__
    inv = perm.inverse()
    return (
        lambda v: perm.apply_plane(v, 0, total_width=width),
        lambda v: inv.apply_plane(v, 0, total_width=width),
    )


class DjOracle(Oracle):
    __slots__ = ("_kind", "_perm", "_perm_inv")

    def __init__(self, spec: DjOracleSpec):
        super().__init__(spec.n)
        self._kind = spec.kind
        self._perm = spec.perm
        self._perm_inv = spec.perm.inverse() if spec.perm is not None else None

    def apply(self, query: QslRegister, target: QslRegister):
        if query.n != self.n or target.n != 1:
            raise ValueError("register width mismatch")
        if self._kind == KIND_BALANCED:
            query.apply_perm(self._perm)
            cnot_across(query, self.n - 1, target, 0)
            query.apply_perm(self._perm_inv)
        elif self._kind == KIND_CONSTANT1:
            target.apply_x(0)
        self.query_count += 1

    def classical_query(self, x: BitVec | int, rng: BitSource | None = None) -> int:
        """One plain function evaluation: returns f(x) as a bit."""
        xv = x.value if isinstance(x, BitVec) else x
        query = QslRegister(self.n, z=xv)
        target = QslRegister(1)
        self.apply(query, target)
        if rng is not None:
            return target.measure_z(rng).value
        return target.z & 1


class SimonOracle(Oracle):
    __slots__ = ("_rows", "_row_mask", "_pi", "_pi_inv", "_anc_z", "_anc_x")

    def __init__(self, spec: SimonOracleSpec, rng: BitSource | None = None):
        super().__init__(spec.n)
        self._rows = list(orthogonal_complement_basis(spec.secret).rows)
        self._row_mask = (1 << len(self._rows)) - 1
        self._pi, self._pi_inv = _perm_int_fns(spec.perm, spec.n)
        self._anc_z = 0
        self._anc_x = rng.bits(spec.n) if rng is not None else 0

    def _mix(self, w: int) -> int:
        """Combination of basis rows selected by the bits of w."""
        d = 0
        w &= self._row_mask
        rows = self._rows
        while w:
            d ^= rows[(w & -w).bit_length() - 1]
            w &= w - 1
        return d

    def apply(self, query: QslRegister, answer: QslRegister):
        if query.n != self.n or answer.n != self.n:
            raise ValueError("register width mismatch")
        rows = self._rows
        qz = query.z
        fx = 0
        for k in range(len(rows)):
            fx |= ((qz & rows[k]).bit_count() & 1) << k
        # Inner-product fan: ancilla picks up the function value, query picks
        # up the ancilla phases through the same wires.
        query.x ^= self._mix(self._anc_x)
        az = self._pi(self._anc_z ^ fx)
        # Copy fan out to the answer; its phase plane flows back to the ancilla.
        answer.z ^= az
        self._anc_x ^= answer.x
        # Uncompute: the ancilla's computational plane is back where it began,
        # and the second fan completes the phase push-back onto the query.
        self._anc_z = self._pi_inv(az) ^ fx
        query.x ^= self._mix(self._anc_x)
        self.query_count += 1

    def classical_query(self, x: BitVec | int, rng: BitSource | None = None) -> BitVec:
        """One plain function evaluation: returns f(x) as a bit vector."""
        xv = x.value if isinstance(x, BitVec) else x
        query = QslRegister(self.n, z=xv)
        answer = QslRegister(self.n)
        self.apply(query, answer)
        if rng is not None:
            return answer.measure_z(rng)
        return BitVec(answer.z, self.n)


def build_dj_oracle(spec: DjOracleSpec) -> DjOracle:
    return DjOracle(spec)


def build_simon_oracle(spec: SimonOracleSpec, rng: BitSource | None = None) -> SimonOracle:
    """Build the hidden-shift oracle; rng seeds the internal ancilla's phase
    plane (which never leaks into any output; omitting it zero-fills)."""
    return SimonOracle(spec, rng)


def build_oracle(spec: OracleSpec, rng: BitSource | None = None) -> Oracle:
    if isinstance(spec, DjOracleSpec):
        return build_dj_oracle(spec)
    return build_simon_oracle(spec, rng)


def _random_perm(n: int, rng: RngStream, depth_factor: float) -> PermSpec:
    if n <= TABLE_PERM_MAX_N:
        return random_table_perm(n, rng.generator)
    return random_circuit_perm(n, default_circuit_gates(n, depth_factor), seed=rng.bits(63))


def random_dj_spec(n: int, rng: RngStream, depth_factor: float = 10.0) -> DjOracleSpec:
    """Random spec: balanced with probability 1/2, else either constant."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if rng.bit():
        return DjOracleSpec(n, KIND_BALANCED, _random_perm(n, rng, depth_factor))
    return DjOracleSpec(n, KIND_CONSTANT1 if rng.bit() else KIND_CONSTANT0)


def random_simon_spec(
    n: int,
    rng: RngStream,
    secret: str = "nonzero",
    depth_factor: float = 10.0,
) -> SimonOracleSpec:
    """Random spec with a uniform nonzero secret, or the zero secret
    (one-to-one function) when secret="zero"."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if secret == "zero":
        s = 0
    elif secret == "nonzero":
        s = rng.bits(n)
        while s == 0:
            s = rng.bits(n)
    else:
        raise ValueError("secret must be 'nonzero' or 'zero'")
    return SimonOracleSpec(n, BitVec(s, n), _random_perm(n, rng, depth_factor))
