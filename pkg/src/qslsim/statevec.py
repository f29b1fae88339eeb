"""Brute-force statevector simulator for small widths.

This is the independent cross-check, never a performance path: amplitudes
are dense complex vectors (wire i = bit i of the amplitude index), the
width is hard-capped, and every gate is applied exactly. The two
distribution builders reproduce what an ideal quantum run of each algorithm
would measure, for comparison against sampled paired-bit runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy import stats

from .core import GateOp
from .gf2 import orthogonal_complement_basis
from .oracles import (
    KIND_BALANCED,
    KIND_CONSTANT1,
    DjOracleSpec,
    SimonOracleSpec,
)
from .perms import TablePerm

WIDTH_MAX = 14
DJ_N_MAX = 10
SIMON_N_MAX = 6

_SQRT1_2 = 1.0 / sqrt(2.0)


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray
    nqubits: int

    def __post_init__(self):
        if self.nqubits > WIDTH_MAX:
            raise ValueError(f"width {self.nqubits} exceeds cap {WIDTH_MAX}")
        if self.amplitudes.shape != (1 << self.nqubits,):
            raise ValueError("amplitude count must be 2^nqubits")


def basis_state(nqubits: int, index: int = 0) -> StateVector:
    amp = np.zeros(1 << nqubits, dtype=np.complex128)
    amp[index] = 1.0
    return StateVector(amp, nqubits)


def _perm_indices(nqubits: int, table, start: int) -> np.ndarray:
    idx = np.arange(1 << nqubits)
    width = (len(table) - 1).bit_length() if len(table) > 1 else 1
    mask = (1 << width) - 1
    tbl = np.asarray(table, dtype=np.int64)
    v = (idx >> start) & mask
    return idx ^ ((v ^ tbl[v]) << start)


def apply_gate_q(state: StateVector, gate: GateOp) -> StateVector:
    """Apply one gate unitary; returns a new state."""
    n = state.nqubits
    amp = state.amplitudes
    kind = gate.kind
    if kind == "h":
        q = gate.wires[0]
        v = amp.reshape(-1, 2, 1 << q)
        a0 = v[:, 0, :]
        a1 = v[:, 1, :]
        out = np.empty_like(v)
        out[:, 0, :] = (a0 + a1) * _SQRT1_2
        out[:, 1, :] = (a0 - a1) * _SQRT1_2
        return StateVector(out.reshape(-1), n)
    if kind == "z":
        q = gate.wires[0]
        idx = np.arange(1 << n)
        sign = 1.0 - 2.0 * ((idx >> q) & 1)
        return StateVector(amp * sign, n)
    # The remaining gates permute the computational basis.
    idx = np.arange(1 << n)
    if kind == "x":
        sigma = idx ^ (1 << gate.wires[0])
    elif kind == "cnot":
        c, t = gate.wires
        sigma = idx ^ (((idx >> c) & 1) << t)
    elif kind == "toffoli":
        c1, c2, t = gate.wires
        sigma = idx ^ ((((idx >> c1) & (idx >> c2)) & 1) << t)
    elif kind == "perm":
        sigma = _perm_indices(n, gate.perm.as_table(), gate.wires[0])
    else:
        raise ValueError(f"unsupported gate {kind!r}")
    out = np.empty_like(amp)
    out[sigma] = amp
    return StateVector(out, n)


def apply_gates(state: StateVector, gates: list[GateOp]) -> StateVector:
    for g in gates:
        state = apply_gate_q(state, g)
    return state


@dataclass(frozen=True)
class Distribution:
    probs: dict[str, float]

    def __post_init__(self):
        total = sum(self.probs.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total}")
        if any(p < -1e-12 for p in self.probs.values()):
            raise ValueError("negative probability")

    def support(self) -> set[str]:
        return {k for k, p in self.probs.items() if p > 1e-12}


def _marginal_low_bits(amp: np.ndarray, keep: int) -> Distribution:
    """Distribution of the low `keep` index bits, tracing out the rest."""
    probs = np.abs(amp) ** 2
    marg = probs.reshape(-1, 1 << keep).sum(axis=0)
    out = {
        format(v, f"0{keep}b"): float(p)
        for v, p in enumerate(marg)
        if p > 1e-15
    }
    return Distribution(out)


def dj_quantum_distribution(spec: DjOracleSpec) -> Distribution:
    """Exact readout distribution of the one-query decision circuit."""
    n = spec.n
    if n > DJ_N_MAX:
        raise ValueError(f"n {n} exceeds cap {DJ_N_MAX}")
    state = basis_state(n + 1, 1 << n)  # query all zero, target set
    for q in range(n + 1):
        state = apply_gate_q(state, GateOp("h", (q,)))
    if spec.kind == KIND_BALANCED:
        table = TablePerm(tuple(spec.perm.as_table()))
        state = apply_gate_q(state, GateOp("perm", (0,), table))
        state = apply_gate_q(state, GateOp("cnot", (n - 1, n)))
        state = apply_gate_q(state, GateOp("perm", (0,), table.inverse()))
    elif spec.kind == KIND_CONSTANT1:
        state = apply_gate_q(state, GateOp("x", (n,)))
    for q in range(n):
        state = apply_gate_q(state, GateOp("h", (q,)))
    return _marginal_low_bits(state.amplitudes, n)


def _simon_f_table(spec: SimonOracleSpec) -> list[int]:
    """Tabulate f(x) = perm(inner products of x with the orthogonal basis)."""
    rows = orthogonal_complement_basis(spec.secret).rows
    table = spec.perm.as_table()
    out = []
    for x in range(1 << spec.n):
        fx = 0
        for k, row in enumerate(rows):
            fx |= ((x & row).bit_count() & 1) << k
        out.append(table[fx])
    return out


def simon_quantum_distribution(spec: SimonOracleSpec) -> Distribution:
    """Exact distribution of the sampling subroutine's readout y.

    Up to width 4 the full oracle is simulated with its internal ancilla
    (query, answer, ancilla = 3n qubits, compute-copy-uncompute and all);
    beyond that the oracle is applied as the exact basis permutation
    (x, z) -> (x, z xor f(x)) on 2n qubits, which is the same unitary once
    the ancilla returns to zero.
    """
    n = spec.n
    if n > SIMON_N_MAX:
        raise ValueError(f"n {n} exceeds cap {SIMON_N_MAX}")
    if 3 * n <= WIDTH_MAX:
        return _simon_distribution_ancilla(spec)
    return _simon_distribution_block(spec)


def _simon_distribution_ancilla(spec: SimonOracleSpec) -> Distribution:
    n = spec.n
    state = basis_state(3 * n)
    gates: list[GateOp] = [GateOp("h", (q,)) for q in range(n)]
    rows = orthogonal_complement_basis(spec.secret).rows
    fan = [
        GateOp("cnot", (j, 2 * n + k))
        for k, row in enumerate(rows)
        for j in range(n)
        if (row >> j) & 1
    ]
    table = TablePerm(tuple(spec.perm.as_table()))
    gates += fan
    gates.append(GateOp("perm", (2 * n,), table))
    gates += [GateOp("cnot", (2 * n + k, n + k)) for k in range(n)]
    gates.append(GateOp("perm", (2 * n,), table.inverse()))
    gates += fan
    gates += [GateOp("h", (q,)) for q in range(n)]
    state = apply_gates(state, gates)
    # Ancilla and answer factor out; the query bits are the low n index bits.
    return _marginal_low_bits(state.amplitudes, n)


def _simon_distribution_block(spec: SimonOracleSpec) -> Distribution:
    n = spec.n
    f = np.asarray(_simon_f_table(spec), dtype=np.int64)
    state = basis_state(2 * n)
    for q in range(n):
        state = apply_gate_q(state, GateOp("h", (q,)))
    idx = np.arange(1 << (2 * n))
    x = idx & ((1 << n) - 1)
    sigma = idx ^ (f[x] << n)
    out = np.empty_like(state.amplitudes)
    out[sigma] = state.amplitudes
    state = StateVector(out, 2 * n)
    for q in range(n):
        state = apply_gate_q(state, GateOp("h", (q,)))
    return _marginal_low_bits(state.amplitudes, n)


def compare_distributions(p: Distribution, q_samples: dict[str, int]) -> dict[str, float]:
    """Total-variation distance and chi-square p-value of counts against p."""
    total = sum(q_samples.values())
    if total <= 0:
        raise ValueError("empty sample set")
    keys = set(p.probs) | set(q_samples)
    tvd = 0.5 * sum(
        abs(p.probs.get(k, 0.0) - q_samples.get(k, 0) / total) for k in keys
    )
    support = sorted(k for k, v in p.probs.items() if v > 1e-12)
    outside = sum(c for k, c in q_samples.items() if k not in support and c > 0)
    if outside > 0:
        return {"tvd": tvd, "chi2_p": 0.0}
    if len(support) == 1:
        return {"tvd": tvd, "chi2_p": 1.0}
    obs = np.array([q_samples.get(k, 0) for k in support], dtype=np.float64)
    exp = np.array([p.probs[k] * total for k in support])
    chi2_p = float(stats.chisquare(obs, exp).pvalue)
    return {"tvd": tvd, "chi2_p": chi2_p}
