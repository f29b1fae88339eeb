"""Agreement suite: paired-bit runs against the exact statevector oracle.

For every nonzero secret at each small width, and a set of permutations, the
sampled subroutine output must (a) land exactly on the set of vectors
orthogonal to the secret, (b) sit within a total-variation budget of the
exact quantum distribution, and (c) pass a chi-square fit. The one-query
decision algorithm must produce the same deterministic verdict as the
quantum point-mass distribution.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .algorithms import deutsch_jozsa, simon_subroutine
from .gf2 import BitVec
from .oracles import (
    KIND_BALANCED,
    KIND_CONSTANT0,
    KIND_CONSTANT1,
    DjOracleSpec,
    OracleSpec,
    SimonOracleSpec,
    build_dj_oracle,
    build_simon_oracle,
)
from .perms import identity_perm, random_table_perm
from .rng import RngStream
from .statevec import (
    SIMON_N_MAX,
    compare_distributions,
    dj_quantum_distribution,
    simon_quantum_distribution,
)

TVD_MAX_DEFAULT = 0.02
CHI2_P_MIN_DEFAULT = 1e-3


@dataclass(frozen=True)
class AgreementCase:
    label: str
    passed: bool
    detail: str


def sample_subroutine(oracle, n: int, rng, samples: int) -> Counter:
    counts: Counter = Counter()
    for _ in range(samples):
        counts[simon_subroutine(oracle, n, rng).text] += 1
    return counts


def check_simon_spec(
    spec: SimonOracleSpec,
    samples: int,
    rng: RngStream,
    tvd_max: float = TVD_MAX_DEFAULT,
    chi2_p_min: float = CHI2_P_MIN_DEFAULT,
) -> AgreementCase:
    n = spec.n
    label = f"simon n={n} s={spec.secret.text}"
    exact = simon_quantum_distribution(spec)
    oracle = build_simon_oracle(spec, rng)
    counts = sample_subroutine(oracle, n, rng, samples)
    expected_support = {
        format(y, f"0{n}b")
        for y in range(1 << n)
        if ((y & spec.secret.value).bit_count() & 1) == 0
    }
    if exact.support() != expected_support:
        return AgreementCase(label, False, "quantum support mismatch")
    if set(counts) != expected_support:
        extra = set(counts) - expected_support
        missing = expected_support - set(counts)
        return AgreementCase(label, False, f"sample support extra={extra} missing={missing}")
    metrics = compare_distributions(exact, counts)
    ok = metrics["tvd"] < tvd_max and metrics["chi2_p"] >= chi2_p_min
    return AgreementCase(
        label, ok, f"tvd={metrics['tvd']:.4f} chi2_p={metrics['chi2_p']:.4g}"
    )


def check_dj_spec(spec: DjOracleSpec, rng: RngStream, runs: int = 5) -> AgreementCase:
    label = f"dj n={spec.n} kind={spec.kind}"
    exact = dj_quantum_distribution(spec)
    p_zero = exact.probs.get("0" * spec.n, 0.0)
    if not (abs(p_zero) < 1e-9 or abs(p_zero - 1.0) < 1e-9):
        return AgreementCase(label, False, f"quantum verdict not a point mass (p0={p_zero})")
    quantum_verdict = "constant" if p_zero > 0.5 else "balanced"
    verdicts = set()
    for _ in range(runs):
        oracle = build_dj_oracle(spec)
        verdicts.add(deutsch_jozsa(oracle, spec.n, rng).verdict)
    if verdicts != {quantum_verdict}:
        return AgreementCase(label, False, f"verdicts {verdicts} vs quantum {quantum_verdict}")
    return AgreementCase(label, True, f"verdict={quantum_verdict}")


def run_agreement_suite(
    max_n: int = 4,
    samples: int = 20000,
    seed: int = 0,
    perms_per_secret: int = 5,
    tvd_max: float = TVD_MAX_DEFAULT,
    chi2_p_min: float = CHI2_P_MIN_DEFAULT,
    extra_specs: tuple[OracleSpec, ...] = (),
) -> list[AgreementCase]:
    if not 2 <= max_n <= SIMON_N_MAX:
        raise ValueError(f"max_n must be in [2, {SIMON_N_MAX}]")
    rng = RngStream(seed, 0)
    perm_rng = RngStream(seed, 1)
    cases = []
    for n in range(2, max_n + 1):
        dj_specs = [
            DjOracleSpec(n, KIND_CONSTANT0),
            DjOracleSpec(n, KIND_CONSTANT1),
            DjOracleSpec(n, KIND_BALANCED, identity_perm(n)),
            DjOracleSpec(n, KIND_BALANCED, random_table_perm(n, perm_rng.generator)),
            DjOracleSpec(n, KIND_BALANCED, random_table_perm(n, perm_rng.generator)),
        ]
        for spec in dj_specs:
            cases.append(check_dj_spec(spec, rng))
        for s in range(1, 1 << n):
            perms = [identity_perm(n)] + [
                random_table_perm(n, perm_rng.generator) for _ in range(perms_per_secret)
            ]
            for perm in perms:
                spec = SimonOracleSpec(n, BitVec(s, n), perm)
                cases.append(check_simon_spec(spec, samples, rng, tvd_max, chi2_p_min))
    for spec in extra_specs:
        if isinstance(spec, DjOracleSpec):
            cases.append(check_dj_spec(spec, rng))
        else:
            cases.append(check_simon_spec(spec, samples, rng, tvd_max, chi2_p_min))
    return cases
