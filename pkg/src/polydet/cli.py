"""Command-line interface: ``polydet {det,kernel,colbasis,gen,bench}``."""
from __future__ import annotations

import argparse
import csv
import io
import math
import secrets
import sys
import time

import numpy as np

from . import fixtures
from .colbasis import RankDeficient, col_basis
from .detconst import InconsistentState
from .determinant import det_report
from .field import FieldContext
from .generate import PROFILES, column_degrees, random_matrix, random_nonsingular
from .kernel import kernel_basis
from .oracle import bareiss_det, oracle_det
from .poly import InexactDivision
from .polymat import MatrixFormatError, PolyMatrix, mul, parse_matrix, render_matrix

EXIT_OK, EXIT_USAGE, EXIT_INTERNAL, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(path: str) -> PolyMatrix:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        return parse_matrix(text)
    except (MatrixFormatError, ValueError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_det(args) -> int:
    F = _load(args.path)
    if F.rows != F.cols:
        raise UsageError(f"matrix is {F.rows}x{F.cols}, not square")
    report = det_report(F, auto_orient=args.auto_orient, check=args.oracle_check)
    print(report.det.render())
    if report.singular:
        _note("singular: determinant is zero")
    if args.trace:
        if report.transposed:
            print("# ran on the transpose")
        print(report.format_table())
    if args.oracle_check:
        expected = oracle_det(F)
        if expected == report.det:
            print("oracle: MATCH")
        else:
            print(f"oracle: MISMATCH (oracle gives {expected.render()})")
            return EXIT_MISMATCH
    return EXIT_OK


def _parse_shift(spec: str, F: PolyMatrix):
    if spec == "auto":
        return None
    try:
        return [int(v) for v in spec.split(",")]
    except ValueError:
        raise UsageError(f"bad shift {spec!r}") from None


def cmd_kernel(args) -> int:
    F = _load(args.path)
    try:
        kb = kernel_basis(F, _parse_shift(args.shift, F))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not mul(F, kb.N).is_zero():
        raise InconsistentState("computed kernel basis does not annihilate F")
    if kb.N.cols == 0:
        _note("trivial kernel")
    print(f"# kernel basis, shift {list(kb.shift)}, shifted degrees {list(kb.degrees)}")
    sys.stdout.write(render_matrix(kb.N))
    return EXIT_OK


def cmd_colbasis(args) -> int:
    F = _load(args.path)
    try:
        triple = col_basis(F, check=True)
    except RankDeficient as exc:
        _note(f"rank {exc.rank} < {exc.expected}: input is not of full row rank")
        return EXIT_USAGE
    print("# G1")
    sys.stdout.write(render_matrix(triple.G1))
    print("# V_U")
    sys.stdout.write(render_matrix(triple.V_U))
    print("# N")
    sys.stdout.write(render_matrix(triple.N.N))
    return EXIT_OK


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbelow(2**32)
        _note(f"seed: {args.seed}")
    return args.seed


def generate(n: int, profile: str, p: int, seed: int, degree: int) -> PolyMatrix:
    if profile == "paper-example":
        return fixtures.example2_F()
    ctx = FieldContext(p)
    rng = np.random.default_rng(seed)
    return random_nonsingular(n, degree, profile, ctx, rng)


def cmd_gen(args) -> int:
    if args.profile != "paper-example":
        if args.n < 1 or args.degree < 0:
            raise UsageError("need n >= 1 and degree >= 0")
    try:
        F = generate(args.n, args.profile, args.p,
                     0 if args.profile == "paper-example" else _seed(args), args.degree)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = render_matrix(F)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _timed(fn, repeats: int):
    best, value = math.inf, None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = fn()
        best = min(best, time.perf_counter() - t0)
    return best, value


def run_bench(sizes, degree: int, p: int, seed: int, *, compare_oracle: bool = False,
              repeats: int = 1, oracle_max_n: int = 48) -> dict:
    """Time the recursive determinant over a size sweep.

    Every instance is checked against an oracle: Bareiss when it is being
    timed, evaluation/interpolation otherwise.
    """
    ctx = FieldContext(p)
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        F = random_matrix(n, n, column_degrees(n, degree, "uniform", rng), ctx, rng)
        t_rec, det = _timed(lambda: det_report(F).det, repeats)
        row = {"n": n, "avg_degree": degree, "time_s": t_rec, "bareiss_s": None,
               "ratio": None, "verified": None}
        if compare_oracle and n <= oracle_max_n:
            t_or, ref = _timed(lambda: bareiss_det(F), 1)
            row["bareiss_s"] = t_or
            row["ratio"] = t_rec / t_or if t_or > 0 else None
        else:
            ref = oracle_det(F, "interpolation") if p > n * degree else bareiss_det(F)
        row["verified"] = ref == det
        rows.append(row)
    usable = [r for r in rows if r["n"] > 1 and r["time_s"] > 0]
    slope = None
    if len(usable) >= 2:
        slope = float(np.polyfit(np.log([r["n"] for r in usable]),
                                 np.log([r["time_s"] for r in usable]), 1)[0])
    return {"rows": rows, "slope": slope, "p": p, "degree": degree, "seed": seed}


def format_bench(result: dict) -> tuple[str, str]:
    buf = io.StringIO()
    fields = ["n", "avg_degree", "time_s", "bareiss_s", "ratio", "verified"]
    w = csv.DictWriter(buf, fieldnames=fields)
    w.writeheader()
    for r in result["rows"]:
        w.writerow({k: ("" if r[k] is None else r[k]) for k in fields})
    lines = [f"{'n':>5} {'deg':>4} {'time[s]':>10} {'bareiss[s]':>11} {'ratio':>7} {'ok':>4}"]
    for r in result["rows"]:
        b = "-" if r["bareiss_s"] is None else f"{r['bareiss_s']:.4f}"
        q = "-" if r["ratio"] is None else f"{r['ratio']:.3f}"
        lines.append(f"{r['n']:>5} {r['avg_degree']:>4} {r['time_s']:>10.4f} {b:>11} {q:>7} "
                     f"{'yes' if r['verified'] else 'NO':>4}")
    slope = result["slope"]
    lines.append(f"fitted log-log slope: {'n/a' if slope is None else f'{slope:.3f}'}")
    return buf.getvalue(), "\n".join(lines)


def cmd_bench(args) -> int:
    try:
        sizes = [int(v) for v in args.sizes.split(",")]
    except ValueError:
        raise UsageError(f"bad size list {args.sizes!r}") from None
    result = run_bench(sizes, args.degree, args.p, _seed(args),
                       compare_oracle=args.compare_oracle, repeats=args.repeats,
                       oracle_max_n=args.oracle_max_n)
    table_csv, text = format_bench(result)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(table_csv)
    else:
        sys.stdout.write(table_csv)
        print()
    print(text)
    if not all(r["verified"] for r in result["rows"]):
        print("oracle: MISMATCH")
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polydet", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", help="determinant of a square matrix file")
    p.add_argument("path")
    p.add_argument("--auto-orient", action="store_true",
                   help="work on the transpose when its degree sum is smaller")
    p.add_argument("--trace", action="store_true", help="print the recursion table")
    p.add_argument("--oracle-check", action="store_true",
                   help="also run the reference determinant and compare")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("kernel", help="shifted minimal kernel basis")
    p.add_argument("path")
    p.add_argument("--shift", default="auto", help="'auto' (= cdeg) or comma list")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("colbasis", help="column basis, right factor and kernel basis")
    p.add_argument("path")
    p.set_defaults(func=cmd_colbasis)

    p = sub.add_parser("gen", help="generate a nonsingular matrix file")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--profile", choices=PROFILES, default="uniform")
    p.add_argument("--p", type=int, default=998244353)
    p.add_argument("--degree", type=int, default=4, help="average column degree")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing sweep over matrix sizes")
    p.add_argument("--sizes", default="8,16,32,48")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--p", type=int, default=998244353)
    p.add_argument("--seed", type=int)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--compare-oracle", action="store_true",
                   help="also time Bareiss elimination")
    p.add_argument("--oracle-max-n", type=int, default=48)
    p.add_argument("--csv", help="write the CSV table here instead of stdout")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except (InconsistentState, InexactDivision) as exc:
        _note(f"internal consistency failure: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
