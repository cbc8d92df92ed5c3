"""Command-line front end: every computation as a CSV or JSON table.

Exit codes: 0 success, 1 numerical failure, 2 consistency-check failure,
64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import __version__
from .errors import DomainError, EdgeGapError, SizeLimit
from .fredholm import HARD_EDGE_M, SOFT_EDGE_M, e1_hard, e2_hard, e4_hard, f1, f2, f4, transition_hard
from .hypergeom import DEFAULT_REL_TOL, hard_gap_hyper
from .montecarlo import (
    Group,
    Shape,
    chunk_rng,
    default_workers,
    group_average,
    group_average_series,
    haar_sample,
    lis_cdf_exact,
    poissonized_lis_cdf,
    symplectic_form,
)

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_CONSISTENCY = 2
EXIT_USAGE = 64

# largest a for which the hypergeometric route is the default
HYPER_MAX_A = 8

SHAPES = {"square": Shape.SQUARE, "antidiag": Shape.ANTI_DIAGONAL, "diag": Shape.DIAGONAL}
GROUPS = {"u": Group.UNITARY, "o": Group.ORTHOGONAL, "sp": Group.SYMPLECTIC}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[float]:
    """``x`` or ``lo:hi:step``; the range includes ``lo`` and stops before ``hi + step/2``."""
    parts = text.split(":")
    try:
        nums = [float(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number in {text!r}") from exc
    if len(nums) == 1:
        return nums
    if len(nums) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}")
    lo, hi, step = nums
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"need step > 0 and hi >= lo in {text!r}")
    count = int(math.floor((hi - lo) / step + 0.5)) + 1
    return [lo + k * step for k in range(count)]


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _seed(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="edgegap", description="Hard/soft edge gap probabilities and their combinatorial models.")
    p.add_argument("--version", action="version", version=f"edgegap {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default=None, help="write the table here instead of stdout")
    common.add_argument("--workers", type=_positive_int, default=None,
                        help="threads for independent rows (default from EDGEGAP_WORKERS or 1)")

    h = sub.add_parser("hard-gap", parents=[common], help="hard-edge gap probability E_beta(s; a)")
    h.add_argument("--beta", type=int, choices=[1, 2, 4], required=True)
    h.add_argument("--s", type=parse_range, required=True)
    h.add_argument("--a", type=int, required=True)
    h.add_argument("--method", choices=["det", "hyper", "both"], default=None,
                   help=f"default: hyper for a <= {HYPER_MAX_A}, det otherwise")
    h.add_argument("--m", type=_positive_int, default=HARD_EDGE_M)
    h.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL)
    h.add_argument("--check-tol", type=float, default=1e-6)

    s = sub.add_parser("soft-gap", parents=[common], help="soft-edge distribution F_beta(s)")
    s.add_argument("--beta", type=int, choices=[1, 2, 4], required=True)
    s.add_argument("--s", type=parse_range, required=True)
    s.add_argument("--m", type=_positive_int, default=SOFT_EDGE_M)

    t = sub.add_parser("transition", parents=[common], help="E_beta^hard(Q_a(s)) against F_beta(s)")
    t.add_argument("--beta", type=int, choices=[1, 2], required=True)
    t.add_argument("--s", type=parse_range, required=True)
    t.add_argument("--a", type=parse_int_list, required=True)
    t.add_argument("--m", type=_positive_int, default=HARD_EDGE_M)
    t.add_argument("--soft-m", type=_positive_int, default=SOFT_EDGE_M)

    l = sub.add_parser("lis", parents=[common], help="Monte Carlo Pr(L(t) <= l) against the exact value")
    l.add_argument("--shape", choices=sorted(SHAPES), required=True)
    l.add_argument("--t", type=float, required=True)
    l.add_argument("--l", type=int, required=True)
    l.add_argument("--trials", type=_positive_int, default=100_000)
    l.add_argument("--seed", type=_seed, default=0)

    g = sub.add_parser("group-average", parents=[common], help="Haar average of exp(sqrt(t) Tr)")
    g.add_argument("--group", choices=sorted(GROUPS), required=True)
    g.add_argument("--n", type=_positive_int, required=True)
    g.add_argument("--t", type=float, required=True)
    g.add_argument("--trials", type=_positive_int, default=100_000)
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("--structure-check", action="store_true",
                   help="also report the group-structure residual of one sample")
    return p


def _map_rows(fn: Callable, items: Sequence, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _hard_det(beta: int, s: float, a: int, m: int) -> float:
    if beta == 2:
        return e2_hard(s, a, m).value
    if beta == 1:
        return e1_hard(s, a, m).value
    if a < 2:
        raise DomainError("beta=4 determinant route needs a >= 2")
    return e4_hard(s, a - 1, m).value


def cmd_hard_gap(args):
    method = args.method or ("hyper" if args.a <= HYPER_MAX_A else "det")
    if args.a < 0:
        raise DomainError("a must be nonnegative")

    def row(s):
        if method == "det":
            return {"s": s, "value": _hard_det(args.beta, s, args.a, args.m)}
        hyper = hard_gap_hyper(args.beta, s, args.a, args.rel_tol).value
        if method == "hyper":
            return {"s": s, "value": hyper}
        det = _hard_det(args.beta, s, args.a, args.m)
        return {"s": s, "value": det, "alt_value": hyper, "discrepancy": abs(det - hyper)}

    rows = _map_rows(row, args.s, args.workers)
    ok = all(r.get("discrepancy", 0.0) <= args.check_tol for r in rows)
    return rows, {"method": method}, ok


def cmd_soft_gap(args):
    fn = {1: f1, 2: f2, 4: f4}[args.beta]
    rows = _map_rows(lambda s: {"s": s, "value": fn(s, args.m).value}, args.s, args.workers)
    return rows, {}, True


def cmd_transition(args):
    if args.beta == 1 and any(a % 2 for a in args.a):
        raise UsageError("beta=1 transition needs even a")
    if any(a < 1 for a in args.a):
        raise UsageError("a must be positive")
    soft_fn = f2 if args.beta == 2 else f1
    soft = dict(zip(args.s, _map_rows(lambda s: soft_fn(s, args.soft_m).value, args.s, args.workers)))
    cells = [(a, s) for a in args.a for s in args.s]

    def row(cell):
        a, s = cell
        hard = transition_hard(args.beta, s, a, args.m).value
        return {"a": a, "s": s, "hard": hard, "soft": soft[s], "error": abs(hard - soft[s])}

    return _map_rows(row, cells, args.workers), {}, True


def cmd_lis(args):
    if args.t <= 0 or args.l < 0:
        raise UsageError("need t > 0 and l >= 0")
    shape = SHAPES[args.shape]
    est = poissonized_lis_cdf(shape, args.t, args.l, args.trials, args.seed, args.workers)
    exact = lis_cdf_exact(shape, args.t, args.l)
    row = {"mc_mean": est.mean, "std_err": est.std_error, "exact_value": exact, "sigmas": est.sigmas(exact)}
    return [row], {"seed": args.seed}, True


def structure_residual(group: Group, mat: np.ndarray) -> float:
    n = mat.shape[0]
    res = np.max(np.abs(mat.conj().T @ mat - np.eye(n)))
    if group is Group.SYMPLECTIC:
        J = symplectic_form(n // 2)
        res = max(res, np.max(np.abs(mat.T @ J @ mat - J)))
    return float(res)


def cmd_group_average(args):
    group = GROUPS[args.group]
    est = group_average(group, args.n, args.t, args.trials, args.seed, args.workers)
    series = group_average_series(group, args.n, args.t)
    row = {"mc_mean": est.mean, "std_err": est.std_error, "series_value": series,
           "sigmas": est.sigmas(series)}
    if args.structure_check:
        # an independent stream so the Monte Carlo columns are unaffected
        sample = haar_sample(group, args.n, chunk_rng(args.seed, 1 << 32))
        row["structure_residual"] = structure_residual(group, sample)
    return [row], {"seed": args.seed}, True


COMMANDS = {
    "hard-gap": cmd_hard_gap,
    "soft-gap": cmd_soft_gap,
    "transition": cmd_transition,
    "lis": cmd_lis,
    "group-average": cmd_group_average,
}


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out",)}


def render(rows: list[dict], meta: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}: {json.dumps(val, sort_keys=True)}\n")
    fields = list(rows[0]) if rows else []
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([_fmt(r.get(f, "")) for f in fields])
    return buf.getvalue()


_NEGATIVE_VALUE = re.compile(r"^-[\d.]")


def _attach_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--s -4:2:1`` into ``--s=-4:2:1`` so argparse does not read it as a flag."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and i + 1 < len(argv) and _NEGATIVE_VALUE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    if args.workers is None:
        args.workers = default_workers()
    start = time.perf_counter()
    try:
        rows, extra, ok = COMMANDS[args.command](args)
    except (UsageError, DomainError, SizeLimit) as exc:
        print(f"edgegap: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EdgeGapError, ArithmeticError) as exc:
        print(f"edgegap: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    meta = {"version": __version__, "config": _config(args), **extra,
            "wall_clock_s": round(time.perf_counter() - start, 6)}
    text = render(rows, meta, args.format)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not ok:
        print("edgegap: consistency check failed", file=sys.stderr)
        return EXIT_CONSISTENCY
    return EXIT_OK
