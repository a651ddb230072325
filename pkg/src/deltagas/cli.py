"""Command-line interface: identity verification, single-value
computation, and route benchmarking.

Complex numbers are written everywhere as ``re,im`` decimal pairs; a
list of complex numbers is the flat comma-separated concatenation of
those pairs.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace

from . import harness, oracles
from .detlib import ik_det, mepno_det
from .errors import DeltaGasError, UnknownIdentity
from .harness import REGISTRY, SampleConfig, bench_routes, default_config, run_identity
from .wavefunction import BetheState, psi_symmetric


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_complex_list(text: str) -> tuple[complex, ...]:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts or len(parts) % 2:
        raise argparse.ArgumentTypeError(
            f"expected an even number of comma-separated floats (re,im pairs), got {text!r}")
    floats = [float(p) for p in parts]
    return tuple(complex(a, b) for a, b in zip(floats[::2], floats[1::2]))


def _format_complex(z: complex) -> str:
    return f"{z.real:.17g},{z.imag:.17g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltagas",
        description="verify, compute, and benchmark the closed-form objects "
                    "of the delta-interacting Bose gas on the line")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run identity checks over random samples")
    p_verify.add_argument("--identity", required=True,
                          help="registry id or 'all'")
    p_verify.add_argument("--m", type=int, default=None, help="set size override")
    p_verify.add_argument("--samples", type=int, default=None, help="samples per identity")
    p_verify.add_argument("--seed", type=int, default=42, help="sampling seed")
    p_verify.add_argument("--tol", type=float, default=None, help="tolerance override")
    p_verify.add_argument("--c", type=float, default=None, help="fix the coupling strength")
    p_verify.add_argument("--kappa", type=_parse_complex, default=None,
                          help="fix the twist parameter as re,im")
    p_verify.add_argument("--json", default=None, help="write the reports to this path")

    p_compute = sub.add_parser("compute", help="evaluate one quantity at explicit inputs")
    p_compute.add_argument("--what", required=True, choices=("psi", "ik", "mepno"))
    p_compute.add_argument("--u", required=True, type=_parse_complex_list,
                           help="rapidities as flat re,im pairs")
    p_compute.add_argument("--v", required=True, type=_parse_complex_list,
                           help="second rapidity set (for psi: the positions)")
    p_compute.add_argument("--c", required=True, type=float, help="coupling strength")
    p_compute.add_argument("--kappa", type=_parse_complex, default=complex(1.0, 0.0),
                           help="twist parameter as re,im (default 1,0)")
    p_compute.add_argument("--route", default="D",
                           choices=("A", "B", "C", "D", "integral"),
                           help="matrix-element evaluation route (mepno only)")

    p_bench = sub.add_parser("bench", help="time the matrix-element routes")
    p_bench.add_argument("--m-min", type=int, required=True)
    p_bench.add_argument("--m-max", type=int, required=True)
    p_bench.add_argument("--samples", type=int, default=5)
    p_bench.add_argument("--csv", default=None, help="write the timing table to this path")

    return parser


def _cmd_verify(args) -> int:
    if args.identity == "all":
        identities = list(REGISTRY)
    elif args.identity in REGISTRY:
        identities = [args.identity]
    else:
        raise UnknownIdentity(f"unknown identity {args.identity!r}")

    reports = []
    for identity in identities:
        cfg = default_config(identity, seed=args.seed)
        if args.m is not None:
            cfg = replace(cfg, m=args.m)
        if args.c is not None:
            cfg = replace(cfg, c_range=(args.c, args.c))
        if args.kappa is not None:
            cfg = replace(cfg, kappa=args.kappa)
        reports.append(run_identity(identity, cfg, samples=args.samples,
                                    tolerance=args.tol))

    header = (f"{'identity':<18} {'M':>3} {'samples':>8} {'resampled':>10} "
              f"{'max_rel_error':>14} {'tolerance':>10} {'time_ms':>9}  status")
    print(header)
    print("-" * len(header))
    for identity, report in zip(identities, reports):
        m = REGISTRY[identity].fixed_m or (args.m or REGISTRY[identity].default_m)
        print(f"{report.identity_id:<18} {m:>3} {report.samples_run:>8} "
              f"{report.samples_resampled:>10} {report.max_rel_error:>14.3e} "
              f"{report.tolerance:>10.1e} {report.wall_time_ms:>9.1f}  "
              f"{'PASS' if report.passed else 'FAIL'}")

    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump([r.to_dict() for r in reports], fh, indent=2)

    return 0 if all(r.passed for r in reports) else 1


def _cmd_compute(args) -> int:
    if args.what == "psi":
        for z in args.v:
            if z.imag != 0.0:
                print("error: positions must be real (im = 0)", file=sys.stderr)
                return 2
        positions = tuple(z.real for z in args.v)
        value = psi_symmetric(positions, BetheState(args.u, args.c))
    elif args.what == "ik":
        value = ik_det(args.u, args.v, args.c)
    else:
        route_fns = {
            "A": oracles.mepno_route_a,
            "B": oracles.mepno_route_b,
            "C": oracles.mepno_route_c,
            "D": mepno_det,
            "integral": oracles.mepno_integral_oracle,
        }
        value = route_fns[args.route](args.u, args.v, args.c, args.kappa).value
    print(_format_complex(value))
    return 0


def _cmd_bench(args) -> int:
    rows = bench_routes(args.m_min, args.m_max, samples=args.samples)
    header = f"{'route':<7} {'M':>3} {'samples':>8} {'mean_ms':>12} {'median_ms':>12}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(f"{row['route']:<7} {row['m']:>3} {row['samples']:>8} "
              f"{row['mean_ms']:>12.4f} {row['median_ms']:>12.4f}")
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=["route", "m", "samples",
                                                    "mean_ms", "median_ms"])
            writer.writeheader()
            writer.writerows(rows)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "compute":
            return _cmd_compute(args)
        return _cmd_bench(args)
    except DeltaGasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
