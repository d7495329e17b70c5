"""Command-line front end: JSON in, one JSON result document out.

Every command prints an envelope ``{"status", "timing_ms", "payload"}`` on
stdout and maps the status to the exit code: ok=0, no-solution=2,
degenerate=3, invalid-input=4, inconclusive=5. Diagnostics go to stderr.
Randomized commands default to --seed 0 so runs are reproducible.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import jsonio
from .assignment import AssignmentContext
from .errors import (
    DegenerateMatrixError,
    MiepError,
    SearchExhaustedError,
    SmoothPointNotFoundError,
    TraceConditionError,
)
from .linalg import charpoly
from .solvability import (
    CERTIFIED_SOLVABLE,
    CERTIFIED_UNSOLVABLE,
    check_generic_solvability,
    construct_witness,
)
from .solver import SolveConfig, count_solutions_diagonal, diag_nondegenerate, solve

STATUS_EXIT = {
    "ok": 0,
    "no-solution": 2,
    "degenerate": 3,
    "invalid-input": 4,
    "inconclusive": 5,
}


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MiepError(f"cannot read {path}: {exc}") from exc


def _make_config(args) -> SolveConfig:
    kwargs = {"seed": args.seed}
    if getattr(args, "starts", None) is not None:
        kwargs["starts"] = args.starts
    if getattr(args, "tol", None) is not None:
        kwargs["residual_tol"] = args.tol
    return SolveConfig(**kwargs)


def cmd_charpoly(args):
    m = jsonio.decode_matrix(_load_json(args.matrix_file))
    coeffs = charpoly(m)
    return {"n": int(m.shape[0]), "coeffs": jsonio.encode_vector(coeffs)}, "ok"


def cmd_check(args):
    fam = jsonio.decode_family(_load_json(args.family))
    m = jsonio.decode_matrix(_load_json(args.matrix)) if args.matrix else None
    report = check_generic_solvability(fam, M=m, seed=args.seed)
    if report.verdict == CERTIFIED_SOLVABLE:
        status = "ok"
    elif report.verdict == CERTIFIED_UNSOLVABLE:
        status = "no-solution"
    else:
        status = "inconclusive"
    return jsonio.encode_report(report), status


def cmd_solve(args):
    fam = jsonio.decode_family(_load_json(args.family))
    m = jsonio.decode_matrix(_load_json(args.matrix))
    target = jsonio.decode_poly(_load_json(args.target), n=fam.n)
    ctx = AssignmentContext(M=m, family=fam)
    result = solve(ctx, target, _make_config(args), threads=args.threads)
    status = "ok" if result.distinct_count > 0 else "no-solution"
    return jsonio.encode_solution_set(result), status


def cmd_count(args):
    m = jsonio.decode_matrix(_load_json(args.matrix))
    if args.n is not None and args.n != m.shape[0]:
        raise MiepError(f"--n {args.n} does not match matrix order {m.shape[0]}")
    target = jsonio.decode_poly(_load_json(args.target), n=int(m.shape[0]))
    result = count_solutions_diagonal(m, target, _make_config(args), threads=args.threads)
    status = "ok" if result.count > 0 else "no-solution"
    return jsonio.encode_count(result), status


def cmd_nondegen(args):
    m = jsonio.decode_matrix(_load_json(args.matrix))
    report = diag_nondegenerate(m)
    return jsonio.encode_nondegeneracy(report), "ok" if report.nondegenerate else "degenerate"


def cmd_witness(args):
    fam = jsonio.decode_family(_load_json(args.family))
    cert = construct_witness(fam, seed=args.seed)
    return jsonio.encode_witness(cert), "ok"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miep",
        description="Characteristic-polynomial assignment over affine matrix families",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("charpoly", help="characteristic polynomial of a matrix")
    p.add_argument("matrix_file")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("check", help="generic-solvability decision with certificates")
    p.add_argument("--family", required=True)
    p.add_argument("--matrix")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="multi-start solve for a target polynomial")
    p.add_argument("--family", required=True)
    p.add_argument("--matrix", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--starts", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("count", help="count diagonal-family solutions against n!")
    p.add_argument("--matrix", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--starts", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("nondegen", help="principal-minor nondegeneracy scan")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_nondegen)

    p = sub.add_parser("witness", help="construct a certified witness matrix")
    p.add_argument("--family", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_witness)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        payload, status = args.func(args)
    except DegenerateMatrixError as exc:
        payload, status = {"error": str(exc)}, "degenerate"
    except (TraceConditionError, SearchExhaustedError, SmoothPointNotFoundError) as exc:
        payload, status = {"error": str(exc)}, "inconclusive"
    except MiepError as exc:
        payload, status = {"error": str(exc)}, "invalid-input"
    timing_ms = (time.perf_counter() - t0) * 1000.0
    if "error" in payload and status != "ok":
        print(f"miep: {payload['error']}", file=sys.stderr)
    json.dump({"status": status, "timing_ms": timing_ms, "payload": payload}, sys.stdout)
    print()
    return STATUS_EXIT[status]


if __name__ == "__main__":
    raise SystemExit(main())
