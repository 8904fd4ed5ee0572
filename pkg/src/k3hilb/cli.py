"""Command line front end: ``k3hilb verify | scan | matrix``.

Exit codes: 0 when a verdict or printout was produced, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .report import (
    matrix_json,
    matrix_text,
    report_json,
    report_text,
    scan_json,
    scan_row,
    scan_text,
)
from .surface import InvalidParameter, check_parameter
from .verdict import DEFAULT_SEARCH_BOUND, DEFAULT_Y_BOUND, density_verdict

SCAN_MAX = 10**4
EXIT_OK, EXIT_INVALID = 0, 2


def _invalid(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INVALID


def cmd_verify(args) -> int:
    try:
        check_parameter(args.a)
    except InvalidParameter as exc:
        return _invalid(str(exc))
    if args.search_bound < 0 or args.y_bound < 0:
        return _invalid("--search-bound and --y-bound must be non-negative")
    report = density_verdict(args.a, args.search_bound, args.y_bound)
    print(report_json(report) if args.format == "json" else report_text(report))
    return EXIT_OK


def _scan_one(job):
    a, search_bound, y_bound = job
    return scan_row(density_verdict(a, search_bound, y_bound))


def cmd_scan(args) -> int:
    lo, hi = args.a_from, args.a_to
    if not (5 <= lo <= hi <= SCAN_MAX):
        return _invalid(f"need 5 <= --from <= --to <= {SCAN_MAX}, got {lo}..{hi}")
    if args.search_bound < 0 or args.y_bound < 0:
        return _invalid("--search-bound and --y-bound must be non-negative")
    jobs = [(a, args.search_bound, args.y_bound) for a in range(lo, hi + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_scan_one, jobs, chunksize=8))
    else:
        rows = [_scan_one(j) for j in jobs]
    print(scan_json(rows) if args.format == "json" else scan_text(rows))
    return EXIT_OK


def cmd_matrix(args) -> int:
    try:
        check_parameter(args.a)
    except InvalidParameter as exc:
        return _invalid(str(exc))
    print(matrix_json(args.a) if args.format == "json" else matrix_text(args.a))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="k3hilb",
        description="Exact verification of the lattice-level potential density criteria "
                    "for S^[2], NS(S) with form 4x^2 + 2axy + 4y^2.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--search-bound", type=int, default=DEFAULT_SEARCH_BOUND,
                       help="box for the brute-force isotropy cross-check (default %(default)s)")
        p.add_argument("--y-bound", type=int, default=DEFAULT_Y_BOUND,
                       help="|y| bound for listing and cross-checking nodal classes (default %(default)s)")

    p = sub.add_parser("verify", help="run the certificate chain for one a")
    p.add_argument("--a", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="tabulate verdicts over a range of a")
    p.add_argument("--from", dest="a_from", type=int, required=True)
    p.add_argument("--to", dest="a_to", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("matrix", help="print the involution matrices and their product")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
