"""Command-line front end.

Exit codes: 0 success, 1 selftest failure, 2 bad input, 3 dependent
generators, 4 mathematical failure (residual or bound violation).
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import selftest
from .canonicalizer import canonicalize
from .errors import DependentGenerators, InvalidBound, NotInAlgebra, NotUnitary, SU2Error
from .fileio import (
    FileFormatError,
    atomic_write,
    encode_matrix,
    load_problem,
    load_schedule,
    schedule_meta,
    schedule_to_csv,
    schedule_to_json,
)
from .factorizer import factorize, verify

EXIT_OK = 0
EXIT_SELFTEST = 1
EXIT_INPUT = 2
EXIT_DEPENDENT = 3
EXIT_NUMERIC = 4


def _fail(code, msg):
    print(f"error: {msg}", file=sys.stderr)
    return code


def _load(path):
    try:
        return load_problem(path), None
    except (FileFormatError, SU2Error) as exc:
        return None, _fail(EXIT_INPUT, f"{path}: {exc}")


def cmd_factorize(input_path, output_path=None, csv=False, tol=None) -> int:
    problem, err = _load(input_path)
    if err is not None:
        return err
    tol = problem.tolerance if tol is None else tol
    try:
        seq, report = factorize(problem.target, problem.pair, problem.bound_c, tol)
    except DependentGenerators as exc:
        return _fail(EXIT_DEPENDENT, f"DependentGenerators: {exc}")
    except (NotUnitary, NotInAlgebra, InvalidBound) as exc:
        return _fail(EXIT_INPUT, f"{type(exc).__name__}: {exc}")
    except SU2Error as exc:
        # ResidualTooLarge, NoViableFrame and internal consistency failures
        return _fail(EXIT_NUMERIC, f"{type(exc).__name__}: {exc}")
    except ValueError as exc:
        return _fail(EXIT_INPUT, str(exc))

    meta = schedule_meta(seq, report)
    text = schedule_to_csv(seq.factors, meta) if csv else schedule_to_json(seq.factors, meta)
    if output_path is None:
        suffix = ".schedule.csv" if csv else ".schedule.json"
        output_path = Path(input_path).with_suffix(suffix)
    atomic_write(output_path, text)
    print(f"Q = {report.Q} (before merging: {report.Q_raw})")
    print(f"residual = {report.residual:.3e}")
    print(f"wrote {output_path}")
    return EXIT_OK


def cmd_verify(input_path, schedule_path, tol=None) -> int:
    problem, err = _load(input_path)
    if err is not None:
        return err
    try:
        schedule = load_schedule(schedule_path)
    except FileFormatError as exc:
        return _fail(EXIT_INPUT, f"{schedule_path}: {exc}")
    tol = problem.tolerance if tol is None else tol

    residual = verify(problem.target, problem.pair, schedule.factors)
    problems = []
    for k, f in enumerate(schedule.factors, 1):
        if not f.a > 0:
            problems.append(f"O1 violated at k={k}: a_k = {f.a!r} is not > 0")
        if not abs(f.b) <= problem.bound_c:
            problems.append(f"O2 violated at k={k}: |b_k| = {abs(f.b)!r} > C = {problem.bound_c!r}")
    if not residual <= tol:
        problems.append(f"residual {residual:.3e} exceeds tolerance {tol:.3e}")

    print(f"Q = {len(schedule.factors)}")
    print(f"residual = {residual:.3e}")
    for line in problems:
        print(line)
    print("OK" if not problems else "FAILED")
    return EXIT_OK if not problems else EXIT_NUMERIC


def cmd_canonicalize(input_path, output_path=None) -> int:
    problem, err = _load(input_path)
    if err is not None:
        return err
    try:
        frame = canonicalize(problem.pair)
    except DependentGenerators as exc:
        return _fail(EXIT_DEPENDENT, f"DependentGenerators: {exc}")
    doc = {
        "V": encode_matrix(frame.V),
        "R": frame.R.tolist(),
        "alpha_c": frame.alpha_c.tolist(),
        "beta_c": frame.beta_c.tolist(),
        "mix": frame.mix.tolist(),
    }
    text = json.dumps(doc, indent=2) + "\n"
    if output_path is None:
        sys.stdout.write(text)
    else:
        atomic_write(output_path, text)
        print(f"wrote {output_path}")
    return EXIT_OK


def cmd_selftest(trials, seed) -> int:
    if trials < 1:
        return _fail(EXIT_INPUT, f"--trials must be >= 1, got {trials}")
    ok = selftest.run(trials, seed, sys.stdout)
    print("all suites passed" if ok else "selftest FAILED")
    return EXIT_OK if ok else EXIT_SELFTEST


def cmd_bench(trials, seed) -> int:
    if trials < 1:
        return _fail(EXIT_INPUT, f"--trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    cases = [
        (selftest.random_su2(rng), selftest.random_pair(rng), selftest.BOUNDS[i % len(selftest.BOUNDS)])
        for i in range(trials)
    ]
    qs, worst = [], 0.0
    start = time.perf_counter()
    for S, pair, C in cases:
        _, report = factorize(S, pair, C)
        qs.append(report.Q)
        worst = max(worst, report.residual)
    elapsed = time.perf_counter() - start
    print(f"trials = {trials}")
    print(f"total time = {elapsed:.3f} s ({1e3 * elapsed / trials:.3f} ms per factorization)")
    print(f"Q: mean {np.mean(qs):.1f}, max {max(qs)}")
    print(f"worst residual = {worst:.3e}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="su2factor",
        description="Factor SU(2) targets into bounded-coefficient exponentials of two generators.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", help="factor the target of a problem file")
    p.add_argument("problem")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--csv", action="store_true", help="write the schedule as CSV")
    p.add_argument("--tol", type=float, default=None, help="override the problem tolerance")

    p = sub.add_parser("verify", help="check a schedule against a problem file")
    p.add_argument("problem")
    p.add_argument("schedule")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("canonicalize", help="print V, R and the mixing matrix for the generators")
    p.add_argument("problem")
    p.add_argument("--output", "-o", default=None)

    for name, trials in (("selftest", 100), ("bench", 1000)):
        p = sub.add_parser(name)
        p.add_argument("--trials", type=int, default=trials)
        p.add_argument("--seed", type=int, default=1)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "factorize":
        return cmd_factorize(args.problem, args.output, args.csv, args.tol)
    if args.command == "verify":
        return cmd_verify(args.problem, args.schedule, args.tol)
    if args.command == "canonicalize":
        return cmd_canonicalize(args.problem, args.output)
    if args.command == "selftest":
        return cmd_selftest(args.trials, args.seed)
    return cmd_bench(args.trials, args.seed)


if __name__ == "__main__":
    raise SystemExit(main())
