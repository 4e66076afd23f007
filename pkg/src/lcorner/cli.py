"""Command-line front end.

    lcorner corner MATRIX RHS [--lambda-min ...] [--output trace.json]
    lcorner lcurve MATRIX RHS [--points 200] [--output lcurve.csv]
    lcorner solve  MATRIX RHS --lambda 1e-6 [--output x.csv]
    lcorner demo   [--n 32] [--seed 1] --outdir DIR

Exit codes: 0 success, 2 usage or input error, 3 numerical or search failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from .corner import CornerSearchConfig, Scale, dense_corner_oracle, find_corner
from .errors import InputError, LCurveError, NumericalError
from .formats import (
    FLOAT_FMT,
    TraceDocument,
    read_matrix_csv,
    read_vector_csv,
    write_matrix_csv,
    write_vector_csv,
)
from .lcurve import build_problem, l_curve_sample, log_grid, tikhonov_solve
from .problems import make_test_problem

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _fmt(v: float) -> str:
    return FLOAT_FMT % v


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_problem(args):
    return build_problem(read_matrix_csv(args.matrix), read_vector_csv(args.rhs))


def _config(args) -> CornerSearchConfig:
    return CornerSearchConfig(
        lambda_lo=args.lambda_min,
        lambda_hi=args.lambda_max,
        epsilon=args.epsilon,
        scale=Scale(args.scale),
        max_iterations=args.max_iter,
    )


def _iterations_csv(doc: TraceDocument) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "branch", "lambda1", "lambda2", "lambda3", "lambda4", "c2", "c3",
                "new_lambda", "new_xi", "new_eta"])
    for r in doc.iterations:
        new = r.new_point
        w.writerow(
            [r.index, "" if r.branch is None else r.branch.value]
            + [_fmt(v) for v in r.lambdas]
            + [_fmt(r.c2), _fmt(r.c3)]
            + (["", "", ""] if new is None else [_fmt(new.lam), _fmt(new.xi), _fmt(new.eta)])
        )
    return buf.getvalue()


def cmd_corner(args) -> int:
    problem = _load_problem(args)
    config = _config(args)
    result = find_corner(problem, config)
    doc = TraceDocument.from_result(result, config)
    _emit(doc.dumps() + "\n" if args.format == "json" else _iterations_csv(doc), args.output)

    summary = sys.stdout if args.output else sys.stderr
    print(f"iterations: {result.iterations}", file=summary)
    print(f"evaluations: {result.evaluations}", file=summary)
    if result.at_boundary:
        print("warning: final bracket touches an initial search extreme", file=summary)
    print(f"lambda_opt: {result.lambda_opt!r}", file=summary)
    return EXIT_OK


def cmd_lcurve(args) -> int:
    if args.points < 3:
        raise _UsageError(f"--points must be at least 3, got {args.points}")
    config = _config(args)  # validates the interval
    problem = _load_problem(args)
    pts = l_curve_sample(problem, log_grid(config.lambda_lo, config.lambda_hi, args.points))
    lam_star, profile = dense_corner_oracle(pts)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "xi", "eta", "curvature", "is_corner"])
    for p, c in zip(pts, profile):
        w.writerow([_fmt(p.lam), _fmt(p.xi), _fmt(p.eta),
                    "" if np.isnan(c) else _fmt(c), int(p.lam == lam_star)])
    _emit(buf.getvalue(), args.output)
    print(f"lambda_star: {lam_star!r}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    problem = _load_problem(args)
    sol = tikhonov_solve(problem, args.lam)
    if args.output:
        write_vector_csv(args.output, sol.x)
    else:
        np.savetxt(sys.stdout, sol.x, fmt=FLOAT_FMT)
    summary = sys.stdout if args.output else sys.stderr
    print(f"lambda: {sol.lam!r}", file=summary)
    print(f"residual_sq: {sol.residual_sq!r}", file=summary)
    print(f"norm_sq: {sol.norm_sq!r}", file=summary)
    return EXIT_OK


def cmd_demo(args) -> int:
    tp = make_test_problem(args.n, args.width, args.noise, args.seed)
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix_csv(out / "matrix.csv", tp.problem.operator)
    write_vector_csv(out / "rhs.csv", tp.problem.data)
    write_vector_csv(out / "x_true.csv", tp.x_true)
    write_vector_csv(out / "b_clean.csv", tp.b_clean)
    print(f"wrote {out / 'matrix.csv'}, rhs.csv, x_true.csv, b_clean.csv "
          f"(n={args.n}, realized noise {tp.realized_noise:.4g})")
    return EXIT_OK


class _UsageError(Exception):
    pass


def _add_system_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("matrix", help="operator CSV, one row per line")
    p.add_argument("rhs", help="data vector CSV, one value per line")


def _add_search_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda-min", type=float, default=1e-10)
    p.add_argument("--lambda-max", type=float, default=1e-3)
    p.add_argument("--epsilon", type=float, default=0.01, help="relative bracket width to stop at")
    p.add_argument("--scale", choices=[s.value for s in Scale], default=Scale.LOG.value,
                   help="coordinate used to place golden-section points")
    p.add_argument("--max-iter", type=int, default=100)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcorner", description="L-curve corner search for Tikhonov regularization")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("corner", help="search for the L-curve corner")
    _add_system_args(p)
    _add_search_args(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_corner)

    p = sub.add_parser("lcurve", help="sample the L-curve on a log grid")
    _add_system_args(p)
    _add_search_args(p)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_lcurve)

    p = sub.add_parser("solve", help="Tikhonov solution at a given lambda")
    _add_system_args(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("demo", help="write a seeded synthetic test problem")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--width", type=float, default=0.1, help="Gaussian kernel width")
    p.add_argument("--noise", type=float, default=1e-2, help="relative noise level")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_demo)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except LCurveError as exc:  # pragma: no cover - every concrete error is one of the above
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
