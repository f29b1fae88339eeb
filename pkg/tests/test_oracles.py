"""Oracle construction: query counting, the hidden-shift function family,
phase kickback, uncompute discipline."""

import pytest

from qslsim import (
    BitVec,
    DjOracleSpec,
    QslRegister,
    RngStream,
    SimonOracleSpec,
    build_dj_oracle,
    build_simon_oracle,
    cnot_across,
    dot,
    identity_perm,
    orthogonal_complement_basis,
    random_circuit_perm,
    random_dj_spec,
    random_simon_spec,
    random_table_perm,
    spec_from_json_dict,
)


def brute_force_f(spec: SimonOracleSpec):
    """Independent tabulation of the hidden-shift function from its parts."""
    rows = orthogonal_complement_basis(spec.secret).rows
    table = spec.perm.as_table()
    out = []
    for x in range(1 << spec.n):
        fx = 0
        for k, row in enumerate(rows):
            fx |= ((x & row).bit_count() & 1) << k
        out.append(table[fx])
    return out


# -- decision-problem oracle -------------------------------------------------


def test_dj_n1_balanced_identity_acts_like_cnot():
    # With the identity permutation at width one, the oracle is exactly the
    # paired-bit CNOT from query to target, for all 16 two-bit states.
    spec = DjOracleSpec(1, "balanced", identity_perm(1))
    for qz in range(2):
        for qx in range(2):
            for tz in range(2):
                for tx in range(2):
                    query = QslRegister(1, qz, qx)
                    target = QslRegister(1, tz, tx)
                    build_dj_oracle(spec).apply(query, target)
                    q2 = QslRegister(1, qz, qx)
                    t2 = QslRegister(1, tz, tx)
                    cnot_across(q2, 0, t2, 0)
                    assert (query.z, query.x, target.z, target.x) == (q2.z, q2.x, t2.z, t2.x)


def test_dj_constant0_leaves_query_phase_plane():
    oracle = build_dj_oracle(DjOracleSpec(3, "constant0"))
    for x in range(8):
        query = QslRegister(3, z=5, x=x)
        target = QslRegister(1, 1, 1)
        oracle.apply(query, target)
        assert query.x == x and query.z == 5
        assert (target.z, target.x) == (1, 1)


def test_dj_constant1_flips_target_bit_only():
    oracle = build_dj_oracle(DjOracleSpec(2, "constant1"))
    query = QslRegister(2, z=0b10, x=0b01)
    target = QslRegister(1, 0, 1)
    oracle.apply(query, target)
    assert (query.z, query.x) == (0b10, 0b01)
    assert (target.z, target.x) == (1, 1)


def test_dj_balanced_kickback_hits_top_wire_phase():
    spec = DjOracleSpec(4, "balanced", random_table_perm(4, RngStream(2, 0).generator))
    oracle = build_dj_oracle(spec)
    query = QslRegister(4, z=0, x=0)
    target = QslRegister(1, 0, 1)  # phase bit set
    oracle.apply(query, target)
    assert query.x == 0b1000  # only index n-1 flipped
    assert query.z == 0


def test_dj_balanced_table_is_balanced_by_construction():
    for seed in range(6):
        spec = DjOracleSpec(3, "balanced", random_table_perm(3, RngStream(seed, 0).generator))
        oracle = build_dj_oracle(spec)
        outputs = [oracle.classical_query(x) for x in range(8)]
        assert sum(outputs) == 4


@pytest.mark.parametrize("n", range(1, 11))
def test_dj_balanced_exactly_half_ones(n):
    spec = DjOracleSpec(n, "balanced", random_table_perm(n, RngStream(n, 3).generator))
    oracle = build_dj_oracle(spec)
    assert sum(oracle.classical_query(x) for x in range(1 << n)) == 1 << (n - 1)


def test_dj_balanced_circuit_perm_is_balanced():
    # Same balance guarantee when the permutation is a reversible circuit.
    spec = DjOracleSpec(6, "balanced", random_circuit_perm(6, 300, seed=17))
    oracle = build_dj_oracle(spec)
    assert sum(oracle.classical_query(x) for x in range(64)) == 32


def test_dj_classical_query_examples():
    oracle = build_dj_oracle(DjOracleSpec(3, "constant1"))
    assert all(oracle.classical_query(x) == 1 for x in range(8))
    # identity permutation: f(x) = most significant bit of x
    oracle = build_dj_oracle(DjOracleSpec(2, "balanced", identity_perm(2)))
    assert [oracle.classical_query(x) for x in range(4)] == [0, 0, 1, 1]


# -- hidden-shift oracle -------------------------------------------------------


def test_simon_worked_example_collision():
    spec = SimonOracleSpec(3, BitVec.from_text("101"), identity_perm(3))
    oracle = build_simon_oracle(spec)
    assert oracle.classical_query(BitVec.from_text("101")) == oracle.classical_query(BitVec.zeros(3))
    assert oracle.classical_query(BitVec.zeros(3)) == BitVec.zeros(3)


@pytest.mark.parametrize(
    "n,secret,perm_seed",
    [(3, "101", None), (5, "10110", 4), (8, "10000001", 9)],
)
def test_simon_xor_mask_invariance_exhaustive(n, secret, perm_seed):
    perm = identity_perm(n) if perm_seed is None else random_table_perm(n, RngStream(perm_seed, 0).generator)
    spec = SimonOracleSpec(n, BitVec.from_text(secret), perm)
    oracle = build_simon_oracle(spec, RngStream(1, 1))
    s = spec.secret.value
    f = [oracle.classical_query(x).value for x in range(1 << n)]
    assert f == brute_force_f(spec)
    for x in range(1 << n):
        assert f[x] == f[x ^ s]
        # two-to-one exactly: only x and x^s collide
        assert sum(1 for y in range(1 << n) if f[y] == f[x]) == 2


@pytest.mark.parametrize("n", [2, 4, 6])
def test_simon_zero_secret_is_injective(n):
    spec = SimonOracleSpec(n, BitVec.zeros(n), random_table_perm(n, RngStream(n, 5).generator))
    oracle = build_simon_oracle(spec)
    outputs = {oracle.classical_query(x).value for x in range(1 << n)}
    assert len(outputs) == 1 << n


def test_query_count_increments():
    spec = SimonOracleSpec(3, BitVec(1, 3), identity_perm(3))
    oracle = build_simon_oracle(spec)
    assert oracle.query_count == 0
    oracle.apply(QslRegister(3), QslRegister(3))
    assert oracle.query_count == 1
    oracle.classical_query(2)
    assert oracle.query_count == 2


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_simon_phase_kickback_equals_row_combination(n):
    # Answer phase w, query phase 0: after one apply the query phase plane is
    # exactly the combination of orthogonal-basis rows selected by w.
    for seed in (0, 1):
        spec = SimonOracleSpec(
            n,
            BitVec(RngStream(seed, 40 + n).bits(n), n),
            random_table_perm(n, RngStream(seed, 50 + n).generator),
        )
        rows = orthogonal_complement_basis(spec.secret).rows
        oracle = build_simon_oracle(spec, RngStream(seed, 60 + n))
        for w in range(1 << n):
            query = QslRegister(n, z=0, x=0)
            answer = QslRegister(n, z=0, x=w)
            oracle.apply(query, answer)
            expected = 0
            for k, row in enumerate(rows):
                if (w >> k) & 1:
                    expected ^= row
            assert query.x == expected
            assert answer.x == w  # answer phase plane untouched
            assert query.z == 0


def test_simon_phase_delta_independent_of_computational_contents():
    # n=3: every (x, z, w) combination gives the same phase delta, g(w).
    spec = SimonOracleSpec(3, BitVec.from_text("110"), random_table_perm(3, RngStream(8, 0).generator))
    rows = orthogonal_complement_basis(spec.secret).rows
    oracle = build_simon_oracle(spec, RngStream(9, 0))
    for w in range(8):
        expected = 0
        for k, row in enumerate(rows):
            if (w >> k) & 1:
                expected ^= row
        for x in range(8):
            for z in range(8):
                query = QslRegister(3, z=x, x=0)
                answer = QslRegister(3, z=z, x=w)
                oracle.apply(query, answer)
                assert query.x == expected
                assert query.z == x


def test_simon_answer_receives_f_xor():
    spec = SimonOracleSpec(4, BitVec.from_text("0110"), random_table_perm(4, RngStream(3, 0).generator))
    f = brute_force_f(spec)
    oracle = build_simon_oracle(spec, RngStream(4, 0))
    for x in (0, 3, 9, 15):
        for z in (0, 5, 12):
            query = QslRegister(4, z=x)
            answer = QslRegister(4, z=z)
            oracle.apply(query, answer)
            assert answer.z == z ^ f[x]


def test_ancilla_computational_plane_restored():
    n = 64
    spec = random_simon_spec(n, RngStream(10, 0))
    oracle = build_simon_oracle(spec, RngStream(11, 0))
    rng = RngStream(12, 0)
    for _ in range(1000):
        before = oracle._anc_z
        query = QslRegister(n, z=rng.bits(n), x=rng.bits(n))
        answer = QslRegister(n, z=rng.bits(n), x=rng.bits(n))
        oracle.apply(query, answer)
        assert oracle._anc_z == before == 0


def test_classical_query_unaffected_by_ancilla_phase_history():
    # The ancilla phase drifts across calls but f never changes.
    spec = random_simon_spec(6, RngStream(13, 0))
    oracle = build_simon_oracle(spec, RngStream(14, 0))
    first = [oracle.classical_query(x).value for x in range(64)]
    again = [oracle.classical_query(x).value for x in range(64)]
    assert first == again


# -- random specs and serialization ---------------------------------------------


def test_random_dj_spec_reproducible():
    a = random_dj_spec(9, RngStream(5, 2))
    b = random_dj_spec(9, RngStream(5, 2))
    assert a == b


def test_random_dj_spec_balanced_validates():
    found = 0
    for seed in range(12):
        spec = random_dj_spec(6, RngStream(seed, 0))
        if spec.kind != "balanced":
            continue
        found += 1
        oracle = build_dj_oracle(spec)
        assert sum(oracle.classical_query(x) for x in range(64)) == 32
    assert found >= 3


def test_random_simon_spec_rows_orthogonal_to_secret():
    for seed in range(8):
        spec = random_simon_spec(10, RngStream(seed, 1))
        assert spec.secret.value != 0
        for row in orthogonal_complement_basis(spec.secret).bitvecs():
            assert dot(row, spec.secret) == 0
    zero = random_simon_spec(5, RngStream(0, 2), secret="zero")
    assert zero.secret.value == 0


def test_random_specs_use_circuit_perm_above_table_cap():
    spec = next(
        s
        for seed in range(20)
        if (s := random_dj_spec(13, RngStream(seed, 0))).kind == "balanced"
    )
    assert spec.perm.ngates == 495  # 10 * 13 * log2(14), rounded


def test_spec_json_roundtrip():
    dj = random_dj_spec(7, RngStream(1, 0))
    assert spec_from_json_dict(dj.to_json_dict()) == dj
    simon = random_simon_spec(16, RngStream(2, 0))  # circuit-perm form
    assert spec_from_json_dict(simon.to_json_dict()) == simon
    with pytest.raises(ValueError):
        spec_from_json_dict({"type": "nope", "n": 2})


def test_oracle_public_surface_is_black_box():
    spec = random_simon_spec(4, RngStream(0, 9))
    oracle = build_simon_oracle(spec)
    public = {a for a in dir(oracle) if not a.startswith("_")}
    assert public == {"n", "query_count", "apply", "classical_query"}
    dj = build_dj_oracle(random_dj_spec(4, RngStream(1, 9)))
    assert {a for a in dir(dj) if not a.startswith("_")} == {
        "n",
        "query_count",
        "apply",
        "classical_query",
    }


def test_oracle_width_mismatch_errors():
    oracle = build_simon_oracle(SimonOracleSpec(3, BitVec(1, 3), identity_perm(3)))
    with pytest.raises(ValueError):
        oracle.apply(QslRegister(4), QslRegister(3))
    dj = build_dj_oracle(DjOracleSpec(3, "constant0"))
    with pytest.raises(ValueError):
        dj.apply(QslRegister(3), QslRegister(2))


def test_spec_validation():
    with pytest.raises(ValueError):
        DjOracleSpec(3, "balanced")  # missing permutation
    with pytest.raises(ValueError):
        DjOracleSpec(3, "constant0", identity_perm(3))
    with pytest.raises(ValueError):
        DjOracleSpec(3, "sometimes")
    with pytest.raises(ValueError):
        SimonOracleSpec(3, BitVec(1, 2), identity_perm(3))
    with pytest.raises(ValueError):
        SimonOracleSpec(3, BitVec(1, 3), identity_perm(2))


def test_large_circuit_perm_roundtrip_on_register():
    n = 512
    spec = random_simon_spec(n, RngStream(21, 0))
    perm = spec.perm
    inv = perm.inverse()
    rng = RngStream(22, 0)
    for _ in range(5):
        reg = QslRegister(n, z=rng.bits(n), x=rng.bits(n))
        z0, x0 = reg.z, reg.x
        reg.apply_perm(perm)
        assert reg.x == x0  # permutations never touch the phase plane
        reg.apply_perm(inv)
        assert (reg.z, reg.x) == (z0, x0)
