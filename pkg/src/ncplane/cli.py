"""Command-line front end: kernel evaluation, parameter sweeps, verification.

All physical inputs are in natural units (hbar = c = 1): theta is a length
squared, positions are lengths, times are inverse energies.  Output is CSV
with a fixed header and full-precision floats to stdout or --out.

Exit codes: 0 success, 1 verification failure or oracle non-convergence,
2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .engine import COMPARE_COLUMNS, KERNEL_COLUMNS, SWEEP_COLUMNS, SWEEP_PARAMS, kernel_point, sweep_rows, verify
from .oracles import REPORT_COLUMNS, report_rows, report_text
from .params import TruncationError
from .quadrature import QuadratureConvergenceError


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(columns: list[str], rows: list[dict], out_path: str | None) -> None:
    handle = open(out_path, "w", newline="") if out_path else sys.stdout
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in columns])
    finally:
        if out_path:
            handle.close()


def _add_physics_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--theta", type=float, default=1.0, help="noncommutativity scale, length^2 (default 1)")
    parser.add_argument("--mass", type=float, default=1.0, help="particle mass (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncplane",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kernel = sub.add_parser("kernel", help="evaluate the propagation kernel at one configuration")
    _add_physics_args(kernel)
    kernel.add_argument("--time", type=float, required=True, help="total propagation time T")
    kernel.add_argument("--x0", type=float, default=0.0, help="start x (length)")
    kernel.add_argument("--y0", type=float, default=0.0, help="start y (length)")
    kernel.add_argument("--xf", type=float, default=0.0, help="end x (length)")
    kernel.add_argument("--yf", type=float, default=0.0, help="end y (length)")
    kernel.add_argument("--compare", action="store_true", help="cross-check against the n-slice fold and the superoperator oracle")
    kernel.add_argument("--slices", type=int, default=8, help="intermediate slices for --compare (default 8)")
    kernel.add_argument("--fock-dim", type=int, default=32, help="truncation dimension for --compare (default 32)")
    kernel.add_argument("--out", type=str, default=None, help="write CSV here instead of stdout")

    sweep = sub.add_parser("sweep", help="evaluate the kernel over a one-parameter grid")
    _add_physics_args(sweep)
    sweep.add_argument("--param", choices=SWEEP_PARAMS, required=True, help="which parameter to sweep")
    sweep.add_argument("--start", type=float, required=True)
    sweep.add_argument("--stop", type=float, required=True)
    sweep.add_argument("--count", type=int, required=True, help="number of grid points (>= 1)")
    sweep.add_argument("--time", type=float, default=1.0, help="fixed T when not swept (default 1)")
    sweep.add_argument("--dx", type=float, default=0.0, help="fixed separation when not swept (default 0)")
    sweep.add_argument("--out", type=str, default=None, help="write CSV here instead of stdout")

    ver = sub.add_parser("verify", help="run the verification suite")
    _add_physics_args(ver)
    ver.add_argument("--fock-dim", type=int, default=32, help="truncation dimension (default 32)")
    ver.add_argument("--tol", type=float, default=1e-8, help="completeness tolerance (default 1e-8)")
    ver.add_argument("--no-star", action="store_true", help="negative control: drop the star product (the completeness check then fails by design)")
    ver.add_argument("--out", type=str, default=None, help="also write the report as CSV here")
    return parser


def _cmd_kernel(args: argparse.Namespace) -> int:
    row = kernel_point(
        theta=args.theta,
        mass=args.mass,
        time=args.time,
        x0=args.x0,
        y0=args.y0,
        xf=args.xf,
        yf=args.yf,
        compare=args.compare,
        slices=args.slices,
        fock_dim=args.fock_dim,
    )
    columns = COMPARE_COLUMNS if args.compare else KERNEL_COLUMNS
    _write_csv(columns, [row], args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep_rows(
        param=args.param,
        start=args.start,
        stop=args.stop,
        count=args.count,
        theta=args.theta,
        mass=args.mass,
        time=args.time,
        dx=args.dx,
    )
    _write_csv(SWEEP_COLUMNS, rows, args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify(
        theta=args.theta,
        mass=args.mass,
        fock_dim=args.fock_dim,
        tol=args.tol,
        use_star=not args.no_star,
    )
    print(report_text(results))
    if args.out:
        with open(args.out, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(REPORT_COLUMNS)
            writer.writerows(report_rows(results))
    if all(r.passed for r in results):
        return 0
    failed = next(r.name for r in results if not r.passed)
    print(f"first failing check: {failed}", file=sys.stderr)
    return 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"kernel": _cmd_kernel, "sweep": _cmd_sweep, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except (TruncationError, QuadratureConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
