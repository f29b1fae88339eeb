"""Statevector reference: exact gate unitaries and algorithm distributions."""

import numpy as np
import pytest

from qslsim import (
    BitVec,
    DjOracleSpec,
    RngStream,
    SimonOracleSpec,
    TablePerm,
    build_dj_oracle,
    build_simon_oracle,
    identity_perm,
    random_table_perm,
)
from qslsim.core import GateOp
from qslsim.statevec import (
    Distribution,
    StateVector,
    apply_gate_q,
    apply_gates,
    basis_state,
    compare_distributions,
    dj_quantum_distribution,
    simon_quantum_distribution,
    _simon_distribution_ancilla,
    _simon_distribution_block,
)


def test_h_on_zero():
    state = apply_gate_q(basis_state(1), GateOp("h", (0,)))
    assert np.allclose(state.amplitudes, [2**-0.5, 2**-0.5])


def test_cnot_basis_action():
    # |control=1, target=0> -> |11>: index 1 (wire0=control) maps to index 3
    state = apply_gate_q(basis_state(2, 0b01), GateOp("cnot", (0, 1)))
    assert np.allclose(state.amplitudes, [0, 0, 0, 1])


def test_perm_acts_as_basis_relabeling():
    table = TablePerm((2, 0, 3, 1))
    for x in range(4):
        state = apply_gate_q(basis_state(2, x), GateOp("perm", (0,), table))
        expected = np.zeros(4)
        expected[table.mapping[x]] = 1
        assert np.allclose(state.amplitudes, expected)


def test_toffoli_and_z_actions():
    state = apply_gate_q(basis_state(3, 0b011), GateOp("toffoli", (0, 1, 2)))
    assert np.argmax(np.abs(state.amplitudes)) == 0b111
    state = apply_gate_q(
        apply_gate_q(basis_state(1), GateOp("h", (0,))), GateOp("z", (0,))
    )
    assert np.allclose(state.amplitudes, [2**-0.5, -(2**-0.5)])


def test_width_cap():
    with pytest.raises(ValueError):
        basis_state(15)


def test_norm_preserved_over_long_random_circuit():
    m = 14
    gen = np.random.default_rng(0)
    state = basis_state(m)
    perm3 = TablePerm(tuple(int(v) for v in gen.permutation(8)))
    for _ in range(10_000):
        kind = gen.integers(0, 6)
        if kind < 3:
            g = GateOp(("h", "x", "z")[kind], (int(gen.integers(0, m)),))
        elif kind == 3:
            a, b = gen.choice(m, size=2, replace=False)
            g = GateOp("cnot", (int(a), int(b)))
        elif kind == 4:
            a, b, c = gen.choice(m, size=3, replace=False)
            g = GateOp("toffoli", (int(a), int(b), int(c)))
        else:
            g = GateOp("perm", (int(gen.integers(0, m - 2)),), perm3)
        state = apply_gate_q(state, g)
    assert abs(np.linalg.norm(state.amplitudes) - 1.0) < 1e-10


# -- decision-problem distribution ------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_dj_constant_is_point_mass_at_zero(n):
    dist = dj_quantum_distribution(DjOracleSpec(n, "constant0"))
    assert dist.probs["0" * n] == pytest.approx(1.0)
    dist = dj_quantum_distribution(DjOracleSpec(n, "constant1"))
    assert dist.probs["0" * n] == pytest.approx(1.0)


def test_dj_n1_balanced_identity_point_mass_at_one():
    dist = dj_quantum_distribution(DjOracleSpec(1, "balanced", identity_perm(1)))
    assert dist.probs["1"] == pytest.approx(1.0)


def test_dj_balanced_never_reads_zero():
    for seed in range(5):
        spec = DjOracleSpec(3, "balanced", random_table_perm(3, RngStream(seed, 0).generator))
        dist = dj_quantum_distribution(spec)
        assert dist.probs.get("000", 0.0) == pytest.approx(0.0, abs=1e-12)


def test_dj_width_guard():
    with pytest.raises(ValueError):
        dj_quantum_distribution(DjOracleSpec(11, "constant0"))


# -- hidden-shift distribution ------------------------------------------------------


def test_simon_worked_example_uniform_quarter():
    spec = SimonOracleSpec(3, BitVec.from_text("101"), identity_perm(3))
    dist = simon_quantum_distribution(spec)
    assert dist.support() == {"000", "010", "101", "111"}
    for p in dist.probs.values():
        assert p == pytest.approx(0.25)


def test_simon_zero_secret_uniform_eighth():
    dist = simon_quantum_distribution(SimonOracleSpec(3, BitVec.zeros(3), identity_perm(3)))
    assert len(dist.probs) == 8
    for p in dist.probs.values():
        assert p == pytest.approx(1 / 8)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simon_support_always_orthogonal(n):
    for s in range(1 << n):
        spec = SimonOracleSpec(n, BitVec(s, n), random_table_perm(n, RngStream(s, n).generator))
        dist = simon_quantum_distribution(spec)
        allowed = {
            format(y, f"0{n}b") for y in range(1 << n) if (y & s).bit_count() % 2 == 0
        }
        assert dist.support() <= allowed
        assert dist.support() == allowed  # uniform over the full set


def test_simon_ancilla_and_block_paths_agree():
    for n in (2, 3, 4):
        for seed in range(3):
            spec = SimonOracleSpec(
                n,
                BitVec(RngStream(seed, n).bits(n), n),
                random_table_perm(n, RngStream(seed, 10 + n).generator),
            )
            da = _simon_distribution_ancilla(spec)
            db = _simon_distribution_block(spec)
            assert set(da.probs) == set(db.probs)
            for k in da.probs:
                assert da.probs[k] == pytest.approx(db.probs[k], abs=1e-12)


def test_simon_block_path_runs_at_n6():
    spec = SimonOracleSpec(6, BitVec(0b101010, 6), identity_perm(6))
    dist = simon_quantum_distribution(spec)
    assert len(dist.probs) == 32
    with pytest.raises(ValueError):
        simon_quantum_distribution(SimonOracleSpec(7, BitVec(1, 7), identity_perm(7)))


# -- oracle unitary consistency -------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_dj_oracle_unitary_matches_classical_query(n):
    spec = DjOracleSpec(n, "balanced", random_table_perm(n, RngStream(n, 1).generator))
    oracle = build_dj_oracle(spec)
    table = TablePerm(tuple(spec.perm.as_table()))
    gates = [
        GateOp("perm", (0,), table),
        GateOp("cnot", (n - 1, n)),
        GateOp("perm", (0,), table.inverse()),
    ]
    for x in range(1 << n):
        for z in (0, 1):
            state = apply_gates(basis_state(n + 1, x | (z << n)), gates)
            out = int(np.argmax(np.abs(state.amplitudes)))
            assert abs(state.amplitudes[out] - 1.0) < 1e-12
            assert out == x | ((z ^ oracle.classical_query(x)) << n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_simon_oracle_unitary_matches_classical_query(n):
    from qslsim.gf2 import orthogonal_complement_basis

    spec = SimonOracleSpec(
        n, BitVec(RngStream(n, 2).bits(n) | 1, n), random_table_perm(n, RngStream(n, 3).generator)
    )
    oracle = build_simon_oracle(spec)
    rows = orthogonal_complement_basis(spec.secret).rows
    table = TablePerm(tuple(spec.perm.as_table()))
    fan = [
        GateOp("cnot", (j, 2 * n + k))
        for k, row in enumerate(rows)
        for j in range(n)
        if (row >> j) & 1
    ]
    gates = (
        fan
        + [GateOp("perm", (2 * n,), table)]
        + [GateOp("cnot", (2 * n + k, n + k)) for k in range(n)]
        + [GateOp("perm", (2 * n,), table.inverse())]
        + fan
    )
    for x in range(1 << n):
        for z in (0, (1 << n) - 1):
            state = apply_gates(basis_state(3 * n, x | (z << n)), gates)
            out = int(np.argmax(np.abs(state.amplitudes)))
            assert abs(state.amplitudes[out] - 1.0) < 1e-12
            fx = oracle.classical_query(x).value
            assert out == x | ((z ^ fx) << n)  # ancilla back to zero


# -- distribution comparison -----------------------------------------------------------


def test_compare_identical_distribution():
    p = Distribution({"0": 0.5, "1": 0.5})
    metrics = compare_distributions(p, {"0": 5000, "1": 5000})
    assert metrics["tvd"] == pytest.approx(0.0)
    assert metrics["chi2_p"] == pytest.approx(1.0)


def test_compare_uniform_vs_point_mass():
    p = Distribution({"0": 0.5, "1": 0.5})
    metrics = compare_distributions(p, {"0": 1000})
    assert metrics["tvd"] == pytest.approx(0.5)


def test_compare_flags_support_violation():
    p = Distribution({"0": 1.0})
    metrics = compare_distributions(p, {"0": 900, "1": 100})
    assert metrics["chi2_p"] == 0.0
    assert metrics["tvd"] == pytest.approx(0.1)


def test_compare_empty_samples():
    with pytest.raises(ValueError):
        compare_distributions(Distribution({"0": 1.0}), {})


def test_distribution_validation():
    with pytest.raises(ValueError):
        Distribution({"0": 0.7})
    with pytest.raises(ValueError):
        Distribution({"0": 1.5, "1": -0.5})


def test_statevector_shape_validation():
    with pytest.raises(ValueError):
        StateVector(np.ones(3, dtype=complex), 2)
