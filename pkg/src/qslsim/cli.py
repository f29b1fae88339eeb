"""Batch experiment runner.

Subcommands:
  dj      one-query constant-vs-balanced trials
  simon   hidden-shift trials (deterministic or probabilistic mode)
  verify  paired-bit vs statevector agreement suite
  bench   per-phase wall-time CSV

Records stream as JSON lines by default (CSV on request). Exit codes:
0 success, 1 usage error, 2 verification failure. QSL_THREADS caps how many
trials run concurrently (default 1, serial); records are always emitted in
trial order.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import _kernels
from .algorithms import (
    simon_deterministic_rows,
    simon_probabilistic_rows,
    simon_solve_rows,
    deutsch_jozsa,
)
from .agreement import run_agreement_suite
from .oracles import (
    build_dj_oracle,
    build_simon_oracle,
    random_dj_spec,
    random_simon_spec,
    spec_from_json_dict,
)
from .records import (
    CSV_FIELDS,
    ExperimentRecord,
    run_dj_trial,
    run_simon_trial,
    run_stream,
    spec_stream,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2

BENCH_FIELDS = ["algorithm", "mode", "n", "rep", "build_ms", "run_ms", "solve_ms", "total_ms", "correct"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _threads() -> int:
    raw = os.environ.get("QSL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _run_trials(fn, trials: int) -> list[ExperimentRecord]:
    workers = _threads()
    if workers == 1 or trials <= 1:
        return [fn(t) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(trials)))


def _emit_records(records: list[ExperimentRecord], fmt: str, out_path: str | None):
    stream = open(out_path, "w", newline="") if out_path else sys.stdout
    try:
        if fmt == "csv":
            writer = csv.writer(stream)
            writer.writerow(CSV_FIELDS)
            for r in records:
                writer.writerow(r.to_csv_row())
        else:
            for r in records:
                stream.write(r.to_json() + "\n")
    finally:
        if out_path:
            stream.close()


def _cmd_dj(args) -> int:
    if args.n < 1:
        print("error: --n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    records = _run_trials(
        lambda t: run_dj_trial(args.n, args.seed, t, kind=args.kind, depth_factor=args.perm_depth_factor),
        args.trials,
    )
    _emit_records(records, args.format, args.out)
    return EXIT_OK


def _cmd_simon(args) -> int:
    if args.n < 2:
        print("error: --n must be >= 2 (a one-bit secret is degenerate)", file=sys.stderr)
        return EXIT_USAGE
    records = _run_trials(
        lambda t: run_simon_trial(args.n, args.seed, t, mode=args.mode, depth_factor=args.perm_depth_factor),
        args.trials,
    )
    _emit_records(records, args.format, args.out)
    return EXIT_OK


def _load_extra_specs(path: str):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read oracle spec file: {exc}", file=sys.stderr)
        return None
    try:
        items = data if isinstance(data, list) else [data]
        return tuple(spec_from_json_dict(d) for d in items)
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: malformed oracle spec: {exc}", file=sys.stderr)
        return None


def _cmd_verify(args) -> int:
    if not 2 <= args.max_n <= 6:
        print("error: --max-n must be between 2 and 6", file=sys.stderr)
        return EXIT_USAGE
    extra = ()
    if args.spec:
        extra = _load_extra_specs(args.spec)
        if extra is None:
            return EXIT_USAGE
    cases = run_agreement_suite(
        max_n=args.max_n, samples=args.samples, seed=args.seed, extra_specs=extra
    )
    failures = 0
    for case in cases:
        tag = "ok  " if case.passed else "FAIL"
        print(f"{tag} {case.label}: {case.detail}")
        failures += 0 if case.passed else 1
    print(f"{len(cases) - failures}/{len(cases)} cases passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


def _bench_dj(n: int, seed: int, rep: int, depth_factor: float) -> dict:
    t0 = time.perf_counter()
    spec = random_dj_spec(n, spec_stream(seed, rep), depth_factor)
    oracle = build_dj_oracle(spec)
    t1 = time.perf_counter()
    result = deutsch_jozsa(oracle, n, run_stream(seed, rep))
    t2 = time.perf_counter()
    truth = "balanced" if spec.kind == "balanced" else "constant"
    return {
        "build_ms": (t1 - t0) * 1e3,
        "run_ms": (t2 - t1) * 1e3,
        "solve_ms": 0.0,
        "correct": result.verdict == truth,
    }


def _bench_simon(n: int, seed: int, rep: int, mode: str, depth_factor: float) -> dict:
    t0 = time.perf_counter()
    spec = random_simon_spec(n, spec_stream(seed, rep), depth_factor=depth_factor)
    rng = run_stream(seed, rep)
    oracle = build_simon_oracle(spec, rng)
    t1 = time.perf_counter()
    if mode == "det":
        rows = simon_deterministic_rows(oracle, n, rng)
    else:
        rows = simon_probabilistic_rows(oracle, n, rng, max_iters=4 * (n + 1))
    t2 = time.perf_counter()
    secret = simon_solve_rows(oracle, n, rows)
    t3 = time.perf_counter()
    return {
        "build_ms": (t1 - t0) * 1e3,
        "run_ms": (t2 - t1) * 1e3,
        "solve_ms": (t3 - t2) * 1e3,
        "correct": secret == spec.secret,
    }


def _cmd_bench(args) -> int:
    try:
        n_list = [int(v) for v in args.n.split(",") if v]
    except ValueError:
        print("error: --n must be a comma-separated list of integers", file=sys.stderr)
        return EXIT_USAGE
    n_min = 1 if args.algorithm == "dj" else 2
    if not n_list or any(n < n_min for n in n_list):
        print(f"error: bench widths must be >= {n_min}", file=sys.stderr)
        return EXIT_USAGE
    _kernels.warmup()  # keep JIT compilation out of the timings
    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(stream)
        writer.writerow(BENCH_FIELDS)
        for n in n_list:
            for rep in range(args.trials):
                if args.algorithm == "dj":
                    row = _bench_dj(n, args.seed, rep, args.perm_depth_factor)
                    mode = ""
                else:
                    row = _bench_simon(n, args.seed, rep, args.mode, args.perm_depth_factor)
                    mode = args.mode
                total = row["build_ms"] + row["run_ms"] + row["solve_ms"]
                writer.writerow(
                    [args.algorithm, mode, n, rep]
                    + [f"{row[k]:.3f}" for k in ("build_ms", "run_ms", "solve_ms")]
                    + [f"{total:.3f}", row["correct"]]
                )
    finally:
        if args.out:
            stream.close()
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="qsl", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, simon=False):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--trials", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
        p.add_argument("--perm-depth-factor", type=float, default=10.0)
        p.add_argument("--out", default=None)

    dj = sub.add_parser("dj", help="run one-query decision trials")
    common(dj)
    dj.add_argument("--kind", choices=["constant0", "constant1", "balanced"], default=None)
    dj.set_defaults(fn=_cmd_dj)

    simon = sub.add_parser("simon", help="run hidden-shift trials")
    common(simon)
    simon.add_argument("--mode", choices=["det", "prob"], default="det")
    simon.set_defaults(fn=_cmd_simon)

    verify = sub.add_parser("verify", help="agreement suite vs the statevector oracle")
    verify.add_argument("--max-n", type=int, default=4)
    verify.add_argument("--samples", type=int, default=20000)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--spec", default=None, help="JSON oracle spec file to include")
    verify.set_defaults(fn=_cmd_verify)

    bench = sub.add_parser("bench", help="per-phase timing CSV")
    bench.add_argument("--algorithm", choices=["dj", "simon"], default="dj")
    bench.add_argument("--mode", choices=["det", "prob"], default="det")
    bench.add_argument("--n", required=True, help="comma-separated widths")
    bench.add_argument("--trials", type=int, default=1, help="repetitions per width")
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--perm-depth-factor", type=float, default=10.0)
    bench.add_argument("--out", default=None)
    bench.set_defaults(fn=_cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "trials", 0) < 0:
        print("error: --trials must be >= 0", file=sys.stderr)
        return EXIT_USAGE
    return args.fn(args)


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
