"""Command-line surface: classify, trace and verify.

Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
3 output I/O error.  All numeric inputs use the exact scalar text form
(e.g. "1/2", "2*pi", "1/(4*pi)"); CSV output uses dot decimals, LF line
endings and 17 significant digits.  Randomized suites take their seed
from --seed, defaulting to the OSCIGEO_SEED environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .geodesics import (
    InvalidStep,
    closed_form_batch,
    integrate_geodesic,
    path_to_csv,
    path_to_json,
)
from .groups import IDENTITY, LatticeSpec, g_mul_f, parse_group_element
from .metric import TangentVector
from .quotients import classify_geodesic, project_geodesic, verdict_to_json
from .scalar import Scalar, parse_scalar
from .verify import run_suites, suite_names

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3


def parse_vector(text: str) -> TangentVector:
    """Parse "a0=...,a1=...,a2=...,a3=..." or four comma-separated scalars."""
    chunks = [c.strip() for c in text.split(",")]
    if len(chunks) != 4:
        raise ValueError(f"vector needs 4 components, got {len(chunks)} in {text!r}")
    values: list[Scalar | None] = [None] * 4
    for i, chunk in enumerate(chunks):
        if "=" in chunk:
            key, _, body = chunk.partition("=")
            key = key.strip().lower()
            if key not in ("a0", "a1", "a2", "a3"):
                raise ValueError(f"unknown vector component {key!r}")
            values[int(key[1])] = parse_scalar(body)
        else:
            values[i] = parse_scalar(chunk)
    if any(v is None for v in values):
        raise ValueError(f"vector {text!r} leaves components unset")
    return TangentVector(*values)  # type: ignore[arg-type]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oscigeo",
        description="Geometry engine for the oscillator group and its compact Lorentzian quotients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    defaults = argparse.ArgumentDefaultsHelpFormatter

    p_classify = sub.add_parser(
        "classify",
        help="exact causal type and periodicity of a geodesic direction",
        formatter_class=defaults,
    )
    p_classify.add_argument("--lattice", required=True, help="k=<int>,twist=<full|half|quarter>")
    p_classify.add_argument(
        "--vector", required=True, help='"a0=..,a1=..,a2=..,a3=.." in exact scalar syntax'
    )
    p_classify.add_argument("--format", choices=("text", "json"), default="text", help="output format")

    p_trace = sub.add_parser(
        "trace", help="sample a geodesic to CSV or JSON", formatter_class=defaults
    )
    p_trace.add_argument("--vector", required=True, help="direction in exact scalar syntax")
    p_trace.add_argument("--base", default=None, help='start point "(t; x, y; z)"')
    p_trace.add_argument("--s-end", type=float, default=10.0, help="final parameter value")
    p_trace.add_argument("--step", type=float, default=0.01, help="sampling step")
    p_trace.add_argument("--format", choices=("csv", "json"), default="csv", help="output format")
    p_trace.add_argument("--output", default="-", help="output path, - for stdout")
    p_trace.add_argument(
        "--quotient", action="store_true", help="reduce samples to lattice coset normal forms"
    )
    p_trace.add_argument("--lattice", default=None, help="required with --quotient")
    p_trace.add_argument(
        "--rk4", action="store_true", help="sample the RK4 integrator instead of the closed form"
    )
    p_trace.add_argument(
        "--rk4-check",
        action="store_true",
        help="append a diff column: sup distance between closed form and RK4 per sample",
    )

    p_verify = sub.add_parser(
        "verify", help="run the verification suites", formatter_class=defaults
    )
    p_verify.add_argument(
        "--suite",
        action="append",
        default=None,
        help=f"suite to run (repeatable); available: {', '.join(suite_names())}",
    )
    p_verify.add_argument(
        "--seed", type=int, default=None, help="suite seed; default OSCIGEO_SEED or 0"
    )
    p_verify.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    return parser


def _default_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("OSCIGEO_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"OSCIGEO_SEED must be an integer, got {env!r}") from None
    return 0


def cmd_classify(args) -> int:
    lattice = LatticeSpec.parse(args.lattice)
    vector = parse_vector(args.vector)
    causal, verdict = classify_geodesic(lattice, vector)
    if args.format == "json":
        print(json.dumps(verdict_to_json(causal, verdict)))
        return EXIT_OK
    parts = [causal.value, verdict.kind.value]
    if verdict.minimal_T is not None:
        parts.append(f"T = {verdict.minimal_T} (float {float(verdict.minimal_T):.15g})")
    if verdict.witness_m is not None:
        parts.append(f"m = {verdict.witness_m}")
    print(", ".join(parts))
    return EXIT_OK


def cmd_trace(args) -> int:
    vector = parse_vector(args.vector)
    base = IDENTITY if args.base is None else parse_group_element(args.base)
    if args.step <= 0:
        raise InvalidStep(f"step must be positive, got {args.step}")
    if args.quotient:
        if args.lattice is None:
            raise ValueError("--quotient requires --lattice")
        lattice = LatticeSpec.parse(args.lattice)
        samples = project_geodesic(lattice, base, vector, args.s_end, args.step)
        header = "s,t,x,y,z"
    else:
        n = max(int(round(args.s_end / args.step)), 0)
        a = vector.to_float()
        base_f = base.to_float()
        closed = np.empty((n + 1, 5))
        for i in range(n + 1):
            s = i * args.step
            closed[i, 0] = s
            closed[i, 1:5] = g_mul_f(base_f, closed_form_batch(a[None, :], s)[0])
        if args.rk4 or args.rk4_check:
            rk4 = integrate_geodesic(base, vector, args.s_end, args.step)
        samples = rk4 if args.rk4 else closed
        header = "s,t,x,y,z"
        if args.rk4_check:
            diff = np.max(np.abs(closed[:, 1:5] - rk4[:, 1:5]), axis=1)
            samples = np.column_stack([samples, diff])
            header = "s,t,x,y,z,diff"

    try:
        if args.output == "-":
            _write_samples(samples, sys.stdout, args.format, header)
        else:
            with open(args.output, "w", newline="") as stream:
                _write_samples(samples, stream, args.format, header)
    except OSError as exc:
        print(f"error: cannot write {args.output!r}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _write_samples(samples, stream, fmt: str, header: str) -> None:
    if fmt == "json":
        path_to_json(samples, stream)
    else:
        path_to_csv(samples, stream, header=header)


def cmd_verify(args) -> int:
    seed = _default_seed(args.seed)
    names = args.suite if args.suite else None
    try:
        results = run_suites(names, seed=seed)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(
            json.dumps(
                [
                    {
                        "suite": r.name,
                        "passed": r.passed,
                        "checks": r.checks,
                        "failures": r.failures[:20],
                    }
                    for r in results
                ]
            )
        )
    else:
        width = max(len(r.name) for r in results)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.name:<{width}}  {status}  ({r.checks} checks)")
            for failure in r.failures[:10]:
                print(f"    {failure}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "classify":
            return cmd_classify(args)
        if args.command == "trace":
            return cmd_trace(args)
        if args.command == "verify":
            return cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
