"""Command-line entry point: ``python3 -m singwalks <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List

from . import funceq, green, segments, sequences
from .algebra import format_scalar, parse_rational
from .checks import Check, all_ok
from .models import get_model
from .oracle import count_walks
from .transfer import _check_t, endpoint_vector_formal_t, q_half


class CLIError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError("usage", message)


def _model(text: str):
    try:
        return get_model(text)
    except ValueError as exc:
        raise CLIError("invalid-model", str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise CLIError("invalid-number", f"cannot parse {text!r} as a rational") from None


def _t_value(text: str) -> Fraction:
    t = _rational(text)
    try:
        return _check_t(t)
    except ValueError as exc:
        raise CLIError("outside-convergence-region", str(exc)) from None


def _cell(text: str) -> tuple:
    try:
        i, j = (int(x) for x in text.split(","))
    except ValueError:
        raise CLIError("invalid-endpoint", f"expected i,j, got {text!r}") from None
    if i < 0 or j < 0:
        raise CLIError("invalid-endpoint", "endpoint coordinates must be nonnegative")
    return i, j


# -- output --------------------------------------------------------------------

def _emit(fmt: str, obj, rows: List[list], header: List[str], plain: List[str], out):
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write("".join(line + "\n" for line in plain))


def _key(cell) -> str:
    return f"({cell[0]},{cell[1]})"


# -- subcommands ---------------------------------------------------------------

def cmd_count(a, out) -> int:
    m = _model(a.model)
    if a.n < 0:
        raise CLIError("usage", "--n must be nonnegative")
    table = count_walks(m, a.n)
    if a.endpoint:
        cell = _cell(a.endpoint)
        vals = [table.count(*cell, n) for n in range(a.n + 1)]
        _emit(a.format, {_key(cell): [str(v) for v in vals]},
              [[n, v] for n, v in enumerate(vals)], ["n", "count"], [str(v) for v in vals], out)
        return 0
    cells = sorted(table.endpoints(), key=lambda c: (c[0] + c[1], c[1]))
    obj = {_key(c): [str(table.count(*c, n)) for n in range(a.n + 1)] for c in cells}
    rows = [[c[0], c[1], n, table.count(*c, n)] for c in cells for n in range(a.n + 1)
            if table.count(*c, n)]
    totals = [str(table.total(n)) for n in range(a.n + 1)]
    _emit(a.format, obj, rows, ["i", "j", "n", "count"], totals, out)
    return 0


def cmd_series(a, out) -> int:
    m = _model(a.model)
    if a.kmax < 0:
        raise CLIError("usage", "--kmax must be nonnegative")
    if a.formal_order is not None:
        obj, rows, plain = {}, [], []
        for k in range(a.kmax + 1):
            vec = endpoint_vector_formal_t(m, k, a.formal_order)
            for b, ser in enumerate(vec):
                cell = (k - b, b)
                coeffs = [format_scalar(c) for c in ser.coeffs]
                obj[_key(cell)] = coeffs
                rows += [[cell[0], cell[1], n, c] for n, c in enumerate(coeffs)]
                plain.append(f"{_key(cell)} " + " ".join(coeffs))
        _emit(a.format, obj, rows, ["i", "j", "n", "coefficient"], plain, out)
        return 0
    t = _t_value(a.t)
    q = q_half(m, a.kmax, t)
    obj = q.to_json()
    rows = [[k.strip("()").split(",")[0], k.strip("()").split(",")[1], v] for k, v in obj.items()]
    _emit(a.format, obj, rows, ["i", "j", "value"], [f"{k} {v}" for k, v in obj.items()], out)
    return 0


def cmd_segment(a, out) -> int:
    if a.k < 0:
        raise CLIError("usage", "--k must be nonnegative")
    t = _t_value(a.t)
    F = segments.f_matrix(a.k + 1, t)
    mat = [[format_scalar(v) for v in row] for row in F]
    rows = [[i, j, v] for i, row in enumerate(mat) for j, v in enumerate(row)]
    _emit(a.format, mat, rows, ["i", "j", "value"], [" ".join(r) for r in mat], out)
    return 0


def cmd_seq(a, out) -> int:
    if a.n < 1:
        raise CLIError("usage", "--n must be positive")
    vals = [format_scalar(v) for v in sequences.SEQUENCE_KINDS[a.kind](a.n - 1).values]
    _emit(a.format, vals, [[n, v] for n, v in enumerate(vals)], ["n", a.kind], vals, out)
    return 0


def _funceq_job(args) -> list:
    mid, vs, order, include_v1 = args
    return funceq.verify_funceq(mid, vs=vs, order=order, include_v1=include_v1, mire=(), reduced=())


def _run_funceq(a) -> List[Check]:
    models = a.model.upper() if a.model else "ABCDE"
    for mid in models:
        _model(mid)
    vs = funceq.GENERIC_VS if a.v is None else (_rational(a.v),)
    include_v1 = a.v is None or _rational(a.v) == 1
    if a.v is not None and _rational(a.v) == 1:
        vs = ()
    order = a.order or 24
    jobs = [(mid, vs, order, include_v1) for mid in models]
    if a.threads > 1:
        with ProcessPoolExecutor(a.threads) as pool:
            parts = list(pool.map(_funceq_job, jobs))
    else:
        parts = [_funceq_job(j) for j in jobs]
    checks = [c for part in parts for c in part]
    if not a.model:
        checks += funceq.verify_funceq("", mire=(8, 20), reduced=(20, 16))
    return checks


def cmd_verify(a, out) -> int:
    checks: List[Check] = []
    try:
        if a.suite in ("segments", "all"):
            checks += segments.verify_segments()
        if a.suite in ("sequences", "all"):
            checks += sequences.verify_sequences()
        if a.suite in ("funceq", "all"):
            checks += _run_funceq(a)
    except funceq.ParametrizationError as exc:
        checks.append(Check("parametrization", False, str(exc)))
    ok = all_ok(checks)
    obj = {"suite": a.suite, "ok": ok, "checks": [c.to_json() for c in checks]}
    rows = [[c.name, "pass" if c.ok else "fail", c.data.get("first_nonzero", ""), c.detail] for c in checks]
    plain = [c.line() for c in checks] + [f"{'ALL PASS' if ok else 'FAILURES'} ({len(checks)} checks)"]
    _emit(a.format, obj, rows, ["identity", "status", "first_nonzero", "detail"], plain, out)
    return 0 if ok else 1


def cmd_simulate(a, out) -> int:
    m = _model(a.model)
    targets = [_cell(t) for t in a.targets.split(";") if t.strip()]
    if not targets:
        raise CLIError("usage", "no targets given")
    try:
        law = green.parse_offspring(a.offspring)
        cfg = green.BRWConfig(m, law, cap=a.cap, horizon=a.horizon, seed=a.seed,
                              ancestors=a.ancestors, batch=a.batch, threads=a.threads)
    except (ValueError, ZeroDivisionError) as exc:
        raise CLIError("invalid-offspring", str(exc)) from None
    res = green.brw_simulate(cfg, targets)
    obj = {"model": m.id, "ancestors": a.ancestors, "seed": a.seed, "horizon": a.horizon,
           "results": [r.to_json() for r in res]}
    rows = [[r.target[0], r.target[1], r.estimate, r.std_error, str(r.exact), r.z_score, r.censored]
            for r in res]
    plain = [f"{_key(r.target)} estimate={r.estimate:.6f} se={r.std_error:.6f} exact={r.exact} "
             f"z={r.z_score:.3f}" + (" CENSORED" if r.flagged else "") for r in res]
    _emit(a.format, obj, rows, ["i", "j", "estimate", "std_error", "exact", "z_score", "censored"],
          plain, out)
    return 1 if any(r.flagged for r in res) else 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="singwalks", description="Exact enumeration and verification for singular quadrant walks.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "plain"), default="plain")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", parents=[common], help="walk counts by dynamic programming")
    c.add_argument("--model", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--endpoint")
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("series", parents=[common], help="coefficients of Q(x, y, t)")
    s.add_argument("--model", required=True)
    s.add_argument("--t", default="1/2")
    s.add_argument("--kmax", type=int, required=True)
    s.add_argument("--formal-order", type=int, dest="formal_order")
    s.set_defaults(func=cmd_series)

    g = sub.add_parser("segment", parents=[common], help="segment walk matrix F_{k+1} at t")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--t", required=True)
    g.set_defaults(func=cmd_segment)

    q = sub.add_parser("seq", parents=[common], help="special sequences")
    q.add_argument("--kind", choices=sorted(sequences.SEQUENCE_KINDS), required=True)
    q.add_argument("--n", type=int, required=True)
    q.set_defaults(func=cmd_seq)

    v = sub.add_parser("verify", parents=[common], help="identity suites")
    v.add_argument("--suite", choices=("sequences", "funceq", "segments", "all"), default="all")
    v.add_argument("--model")
    v.add_argument("--v")
    v.add_argument("--order", type=int)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("simulate", parents=[common], help="branching random walk Monte Carlo")
    r.add_argument("--model", default="A")
    r.add_argument("--offspring", default="1:1/2,2:1/2")
    r.add_argument("--targets", default="1,1;2,0")
    r.add_argument("--ancestors", type=int, default=100_000)
    r.add_argument("--horizon", type=int, default=60)
    r.add_argument("--cap", type=int, default=10 ** 6)
    r.add_argument("--batch", type=int, default=10_000)
    r.set_defaults(func=cmd_simulate)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise CLIError("usage", "--threads must be at least 1")
        return args.func(args, out)
    except CLIError as exc:
        err.write(json.dumps({"error": exc.kind, "message": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
