"""Serializable per-trial experiment records and the trial runners.

A record carries everything needed to replay it: the algorithm, width, the
master seed plus trial index (which derive the per-trial random streams),
and the full oracle spec. Replaying reproduces verdict/secret and query
count exactly. Stream derivation: trial t uses stream 2t for spec
generation and stream 2t+1 for the run (oracle ancilla draws included).
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass

from .algorithms import (
    IterationLimitExceeded,
    deutsch_jozsa,
    simon_deterministic,
    simon_probabilistic,
)
from .oracles import (
    KIND_BALANCED,
    DjOracleSpec,
    SimonOracleSpec,
    build_dj_oracle,
    build_simon_oracle,
    random_dj_spec,
    random_simon_spec,
    spec_from_json_dict,
    _random_perm,
)
from .rng import RngStream

SCHEMA_VERSION = 1

CSV_FIELDS = [
    "schema",
    "algorithm",
    "n",
    "seed",
    "trial",
    "verdict",
    "secret",
    "queries",
    "iterations",
    "wall_time_ms",
    "correct",
    "error",
    "oracle_spec",
]


@dataclass(frozen=True)
class ExperimentRecord:
    algorithm: str  # "dj" | "simon-det" | "simon-prob"
    n: int
    seed: int
    trial: int
    oracle_spec: dict
    verdict: str | None
    secret: str | None
    queries: int
    iterations: int
    wall_time_ms: float
    correct: bool | None
    error: str | None = None
    schema: int = SCHEMA_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def to_csv_row(self) -> list[str]:
        d = asdict(self)
        d["oracle_spec"] = json.dumps(d["oracle_spec"], sort_keys=True)
        return [("" if d[f] is None else str(d[f])) for f in CSV_FIELDS]

    @classmethod
    def from_json(cls, line: str) -> "ExperimentRecord":
        return cls(**json.loads(line))


def spec_stream(seed: int, trial: int) -> RngStream:
    return RngStream(seed, 2 * trial)


def run_stream(seed: int, trial: int) -> RngStream:
    return RngStream(seed, 2 * trial + 1)


def run_dj_trial(
    n: int,
    seed: int,
    trial: int,
    kind: str | None = None,
    depth_factor: float = 10.0,
) -> ExperimentRecord:
    rng = spec_stream(seed, trial)
    if kind is None:
        spec = random_dj_spec(n, rng, depth_factor)
    elif kind == KIND_BALANCED:
        spec = DjOracleSpec(n, kind, _random_perm(n, rng, depth_factor))
    else:
        spec = DjOracleSpec(n, kind)
    oracle = build_dj_oracle(spec)
    t0 = time.perf_counter()
    result = deutsch_jozsa(oracle, n, run_stream(seed, trial))
    dt_ms = (time.perf_counter() - t0) * 1e3
    truth = "balanced" if spec.kind == KIND_BALANCED else "constant"
    return ExperimentRecord(
        algorithm="dj",
        n=n,
        seed=seed,
        trial=trial,
        oracle_spec=spec.to_json_dict(),
        verdict=result.verdict,
        secret=None,
        queries=result.queries,
        iterations=1,
        wall_time_ms=dt_ms,
        correct=result.verdict == truth,
    )


def run_simon_trial(
    n: int,
    seed: int,
    trial: int,
    mode: str = "det",
    depth_factor: float = 10.0,
    secret: str = "nonzero",
) -> ExperimentRecord:
    spec = random_simon_spec(n, spec_stream(seed, trial), secret=secret, depth_factor=depth_factor)
    rng = run_stream(seed, trial)
    oracle = build_simon_oracle(spec, rng)
    solver = simon_deterministic if mode == "det" else simon_probabilistic
    t0 = time.perf_counter()
    try:
        result = solver(oracle, n, rng)
        err = None
    except IterationLimitExceeded as exc:
        result = None
        err = f"iteration limit: {exc}"
    dt_ms = (time.perf_counter() - t0) * 1e3
    return ExperimentRecord(
        algorithm=f"simon-{mode}",
        n=n,
        seed=seed,
        trial=trial,
        oracle_spec=spec.to_json_dict(),
        verdict=None,
        secret=result.secret.text if result else None,
        queries=result.queries if result else oracle.query_count,
        iterations=result.iterations if result else 0,
        wall_time_ms=dt_ms,
        correct=(result.secret == spec.secret) if result else False,
        error=err,
    )


def replay(record: ExperimentRecord) -> dict:
    """Re-run a record from its spec and seeds; returns the reproduced
    verdict/secret and query count for comparison."""
    spec = spec_from_json_dict(record.oracle_spec)
    rng = run_stream(record.seed, record.trial)
    if isinstance(spec, DjOracleSpec):
        oracle = build_dj_oracle(spec)
        result = deutsch_jozsa(oracle, record.n, rng)
        return {"verdict": result.verdict, "secret": None, "queries": result.queries}
    assert isinstance(spec, SimonOracleSpec)
    oracle = build_simon_oracle(spec, rng)
    solver = simon_deterministic if record.algorithm == "simon-det" else simon_probabilistic
    result = solver(oracle, record.n, rng)
    return {"verdict": None, "secret": result.secret.text, "queries": result.queries}
