"""Command-line interface: evolve, compare, sweep, moments.

Exit codes: 0 success, 1 validation/parse error, 2 tolerance failure,
3 numerical failure (caustic, quadrature, leaking grid, coarse truncation).
"""
from __future__ import annotations

import argparse
import sys

from .errors import (
    CausticReached,
    InternalCheckError,
    LeakingState,
    LinpacketError,
    OutOfTabulatedRange,
    ParseError,
    QuadratureNonConvergence,
    TruncationTooCoarse,
    ValidationError,
)
from .reports import moments_report, rows_to_csv, run_compare, run_evolve, run_sweep
from .scenario import parse_scenario

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_TOLERANCE = 2
EXIT_NUMERICAL = 3

_NUMERICAL = (CausticReached, QuadratureNonConvergence, LeakingState,
              OutOfTabulatedRange, TruncationTooCoarse, InternalCheckError)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linpacket",
        description="Gaussian wave packets in a time-dependent uniform force "
                    "field: closed forms vs. split-step propagation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_evolve = sub.add_parser("evolve", help="tabulate moments along a trajectory")
    p_evolve.add_argument("--config", required=True, help="scenario file")
    p_evolve.add_argument("--output", required=True, help="output CSV path")

    p_compare = sub.add_parser("compare", help="check the propagator against closed forms")
    p_compare.add_argument("--config", required=True, help="scenario file")

    p_sweep = sub.add_parser("sweep", help="tabulate t_end moments over a parameter sweep")
    p_sweep.add_argument("--config", required=True, help="scenario file")
    p_sweep.add_argument("--param", required=True, help="parameter name to sweep")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--output", required=True, help="output CSV path")

    p_moments = sub.add_parser("moments", help="print moments at one time")
    p_moments.add_argument("--config", required=True, help="scenario file")
    p_moments.add_argument("--time", required=True, type=float, help="evaluation time")

    return parser


def _run(args) -> int:
    scenario = parse_scenario(args.config)
    if args.command == "evolve":
        rows = run_evolve(scenario)
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(rows_to_csv(rows))
        return EXIT_OK
    if args.command == "compare":
        summary, text = run_compare(scenario)
        sys.stdout.write(text)
        return EXIT_OK if summary.passed else EXIT_TOLERANCE
    if args.command == "sweep":
        try:
            values = [float(tok) for tok in args.values.split(",")]
        except ValueError:
            raise ValidationError(f"--values must be a comma-separated number list, "
                                  f"got {args.values!r}") from None
        csv_text = run_sweep(scenario, args.param, values)
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text)
        return EXIT_OK
    # moments
    sys.stdout.write(moments_report(scenario, args.time))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except _NUMERICAL as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except LinpacketError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
