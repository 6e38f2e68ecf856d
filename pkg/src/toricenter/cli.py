"""Command-line front end: ``toricenter {info,center,verify,sample}``.

Exit codes:

    0  success
    2  unreadable or malformed input, bad flag values
    3  internal inconsistency (a freshly built certificate failed its exact check)
    4  arrangement violates n >= m >= 1 / full rank
    5  verification failed
    6  bad equation index or degenerate equation (sample)
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .arrangement import ToricArrangement, load_arrangement
from .centering import center, load_certificate, verify_certificate_exact
from .errors import DegenerateEquation, HypothesisError, ParseError, ToricError
from .intlinalg import rank
from .numeric import decimal
from .verify import (
    DEFAULT_PRECISION,
    DEFAULT_TOLERANCE,
    DEFAULT_TRIALS,
    residual,
    sample_on_subtorus,
    verify_diffeo,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_HYPOTHESIS = 4
EXIT_VERIFY_FAILED = 5
EXIT_BAD_INDEX = 6


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _precision(text: str) -> int:
    value = int(text)
    if value < 53:
        raise argparse.ArgumentTypeError(f"precision must be >= 53 bits, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _branch_list(text: str) -> list[int]:
    try:
        return [int(b) for b in text.split(",") if b.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", required=True, type=Path)
    common.add_argument("-o", "--output", type=Path)
    common.add_argument("--json", action="store_true", help="print JSON on stdout")

    numeric = argparse.ArgumentParser(add_help=False)
    numeric.add_argument("--precision-bits", type=_precision, default=DEFAULT_PRECISION)
    numeric.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="toricenter",
        description="Center toric arrangements with full-rank exponent matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="summarize an arrangement file")

    p = sub.add_parser("center", parents=[common], help="build a centering certificate")
    p.add_argument("--branch-indices", type=_branch_list, default=None)

    p = sub.add_parser("verify", parents=[common, numeric], help="replay a certificate")
    p.add_argument("--trials", type=_nonnegative, default=DEFAULT_TRIALS)
    p.add_argument("--tolerance", type=_positive_float, default=DEFAULT_TOLERANCE)

    p = sub.add_parser("sample", parents=[common, numeric], help="sample points on a subtorus")
    p.add_argument("--index", type=int, default=1, help="1-based equation index")
    p.add_argument("--count", type=_nonnegative, default=4)
    return parser


def _load_arrangement(path: Path) -> ToricArrangement:
    try:
        return load_arrangement(path)
    except OSError as exc:
        raise CliFailure(EXIT_INPUT, f"cannot read {path}: {exc}")
    except ParseError as exc:
        raise CliFailure(EXIT_INPUT, f"parse error: {exc}")


def _hypothesis_status(a: ToricArrangement) -> tuple[int | None, str]:
    if a.m == 0:
        return None, "FAILS (no equations)"
    r = rank(a.associated_matrix())
    if a.m > a.n:
        return r, f"FAILS (m {a.m} > n {a.n})"
    if r < a.m:
        return r, f"FAILS (rank {r} < m {a.m})"
    return r, "OK"


def _emit(args, payload: dict, text: str) -> None:
    if args.output is not None:
        args.output.write_text(json.dumps(payload, indent=2) + "\n")
    print(json.dumps(payload, indent=2) if args.json else text)


def cmd_info(args) -> int:
    a = _load_arrangement(args.input)
    r, status = _hypothesis_status(a)
    matrix = [list(eq.exponents) for eq in a.equations]
    payload = {
        "m": a.m,
        "n": a.n,
        "associated_matrix": matrix,
        "rank": r,
        "complexified": a.is_complexified(),
        "centered": a.is_centered(),
        "hypothesis": status,
    }
    lines = [f"m={a.m} n={a.n} rank={r} hypothesis: {status}", "associated matrix:"]
    lines += [f"  {row}" for row in matrix]
    lines.append(
        f"centered: {str(a.is_centered()).lower()}, "
        f"complexified: {str(a.is_complexified()).lower()}"
    )
    lines.append(str(a))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_center(args) -> int:
    a = _load_arrangement(args.input)
    try:
        cert = center(a, args.branch_indices)
    except HypothesisError as exc:
        raise CliFailure(EXIT_HYPOTHESIS, f"hypothesis violated: {exc}")
    except ValueError as exc:
        raise CliFailure(EXIT_INPUT, str(exc))
    check = verify_certificate_exact(cert)
    if not check:
        raise CliFailure(
            EXIT_INTERNAL, "internal inconsistency:\n  " + "\n  ".join(check.failures)
        )
    payload = cert.to_json()
    text = "\n".join(
        [
            f"sigma: {list(cert.sigma.perm)}",
            f"U diagonal: {list(cert.diagonal)}",
            "gammas: " + ", ".join(str(g) for g in cert.gammas),
            "target:",
            str(cert.target),
        ]
    )
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        cert = load_certificate(args.input)
    except OSError as exc:
        raise CliFailure(EXIT_INPUT, f"cannot read {args.input}: {exc}")
    except ParseError as exc:
        raise CliFailure(EXIT_INPUT, f"parse error: {exc}")
    try:
        report = verify_diffeo(
            cert, args.trials, args.precision_bits, args.tolerance, args.seed, check_exact=True
        )
    except ToricError as exc:
        # the chain cannot even be applied to the source points
        print(f"toricenter verify: fail ({type(exc).__name__}: {exc})", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    payload = report.to_json()
    lines = [f"verdict: {payload['verdict']}"]
    lines += [
        f"  equation {i}: max residual {r}"
        for i, r in enumerate(payload["max_residuals"], start=1)
    ]
    lines.append(
        f"  complement: {report.complement_trials} trials, "
        f"min residual {payload['min_complement_residual']}, "
        f"{report.complement_failures} failures"
    )
    lines += [f"  exact: {f}" for f in report.exact_failures]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def cmd_sample(args) -> int:
    a = _load_arrangement(args.input)
    if not 1 <= args.index <= a.m:
        raise CliFailure(EXIT_BAD_INDEX, f"equation index {args.index} outside 1..{a.m}")
    eq = a.equations[args.index - 1]
    if eq.is_degenerate():
        raise CliFailure(
            EXIT_BAD_INDEX, f"DegenerateEquation: equation {args.index} has no nonzero exponent"
        )
    rng = random.Random(args.seed)
    bits = args.precision_bits
    points = []
    for _ in range(args.count):
        z = sample_on_subtorus(eq, rng, bits)
        points.append(
            {
                "coordinates": [[decimal(c.real, bits), decimal(c.imag, bits)] for c in z],
                "residual": decimal(residual(eq, z, bits), bits),
            }
        )
    payload = {"equation": args.index, "precision_bits": bits, "seed": args.seed, "points": points}
    text = "\n".join(
        " ".join(f"({re} {im}j)" for re, im in p["coordinates"]) + f"  residual {p['residual']}"
        for p in points
    )
    _emit(args, payload, text)
    return EXIT_OK


COMMANDS = {"info": cmd_info, "center": cmd_center, "verify": cmd_verify, "sample": cmd_sample}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliFailure as exc:
        print(f"toricenter {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except DegenerateEquation as exc:
        print(f"toricenter {args.command}: {exc}", file=sys.stderr)
        return EXIT_BAD_INDEX
    except ToricError as exc:
        print(f"toricenter {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
