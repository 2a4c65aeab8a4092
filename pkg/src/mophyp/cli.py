"""Command-line front end.

    mophyp verify  --params 1,2,3,4 [--suites all] [--output report.json]
    mophyp zeros   --params 1,2,3,4 --n 40 [--format csv|json]
    mophyp density --params 1,2,3,4 --n 80 [--grid-size 200]
    mophyp eval    {weight,typeii,typei,ratio,mh} [--params ...] [--n N] [--x X] [--z Z]

Exit codes: 0 all checks pass, 1 a verification failed, 2 bad usage or parameters.
Parameters written as integers or fractions ("4/3") select exact arithmetic;
any decimal selects floating point.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__, asymptotics, typei, typeii
from .hyperfun import entire_0f2
from .suites import SUITE_NAMES, SuiteConfig, applicable_suites, run_suite
from .weights import ParameterError, Params, validate_params, weight_eval

SCHEMA = "mophyp-report/1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_params(text: str, *, allow_degenerate: bool = False) -> Params:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4 or not all(parts):
        raise UsageError(f"--params needs four comma-separated values a,b,c,d, got {text!r}")
    try:
        return validate_params(*parts, allow_degenerate=allow_degenerate)
    except ParameterError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse --params {text!r}: {exc}") from exc


def _mode(p: Params) -> str:
    return "exact" if p.exact else "float"


def _params_json(p: Params) -> dict:
    return {
        "a": str(p.a),
        "b": str(p.b),
        "c": str(p.c),
        "d": str(p.d),
        "mode": _mode(p),
        "degenerate": p.degenerate,
    }


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------


def _timed_suite(args):
    name, cfg = args
    t0 = time.perf_counter()
    out = run_suite(name, cfg)
    out["timing_s"] = round(time.perf_counter() - t0, 6)
    return out


def _parse_suites(text: str) -> list:
    if text == "all":
        return list(SUITE_NAMES)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITE_NAMES]
    if unknown or not names:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {', '.join(SUITE_NAMES)} or 'all'")
    return names


def build_report(p: Params, suites, *, n_max=12, float_n_max=80, seed=0, jobs=1) -> dict:
    """Run ``suites`` and assemble the ``mophyp-report/1`` document."""
    cfg = SuiteConfig(p, n_max, float_n_max, seed)
    names = applicable_suites(p, suites)
    t0 = time.perf_counter()
    work = [(name, cfg) for name in names]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_timed_suite, work))
    else:
        results = [_timed_suite(w) for w in work]
    status = "pass" if all(r["status"] == "pass" for r in results) else "fail"
    return {
        "schema": SCHEMA,
        "tool_version": __version__,
        "params": _params_json(p),
        "seed": seed,
        "n_max": n_max,
        "float_n_max": float_n_max,
        "status": status,
        "timing_s": round(time.perf_counter() - t0, 6),
        "suites": results,
    }


def cmd_verify(args) -> int:
    p = parse_params(args.params, allow_degenerate=args.allow_degenerate)
    if args.n_max < 0 or args.float_n_max < 10 or args.jobs < 1:
        raise UsageError("need --n-max >= 0, --float-n-max >= 10 and --jobs >= 1")
    report = build_report(
        p,
        _parse_suites(args.suites),
        n_max=args.n_max,
        float_n_max=args.float_n_max,
        seed=args.seed,
        jobs=args.jobs,
    )
    text = json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for suite in report["suites"]:
        failed = [c for c in suite["checks"] if c["status"] == "fail"]
        print(f"{suite['name']:<14} {suite['status'].upper()}  ({len(suite['checks'])} checks)", file=sys.stderr)
        for c in failed:
            print(f"    FAIL {c['name']}: {c['witness']}", file=sys.stderr)
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


# --------------------------------------------------------------------------
# zeros and density
# --------------------------------------------------------------------------


def _write_csv(header, rows, out):
    w = csv.writer(out, lineterminator="\r\n")
    w.writerow(header)
    w.writerows(rows)


def cmd_zeros(args) -> int:
    p = parse_params(args.params)
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    try:
        rep = typeii.zero_report(p, args.n)
    except typeii.ZeroOracleError as exc:
        json.dump(
            {
                "error": str(exc),
                "first": None if exc.first is None else np.asarray(exc.first).tolist(),
                "second": None if exc.second is None else np.asarray(exc.second).tolist(),
            },
            sys.stdout,
            default=str,
        )
        sys.stdout.write("\n")
        return EXIT_FAIL
    rows = [
        (i + 1, repr(float(z)), repr(float(r)), repr(float(e)))
        for i, (z, r, e) in enumerate(zip(rep.zeros, rep.poly_residual, rep.eig_residual))
    ]
    if args.format == "csv":
        _write_csv(("index", "zero", "poly_residual", "eig_residual"), rows, sys.stdout)
    else:
        doc = {
            "params": _params_json(p),
            "n": args.n,
            "zeros": [
                {"index": i, "zero": float(z), "poly_residual": float(r), "eig_residual": float(e)}
                for i, z, r, e in ((row[0], *map(float, row[1:])) for row in rows)
            ],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def density_rows(p: Params, n: int, grid_size: int) -> list:
    """(x, empirical CDF, limit CDF, limit density, sup distance) on x = 1/g, ..., 1.

    The density is infinite at x = 1 and written as ``inf`` there.
    """
    zs = typeii.zeros(p, n)
    sup = asymptotics.empirical_vs_limit(p, n, zs=zs)
    xs = np.arange(1, grid_size + 1) / grid_size
    emp = np.searchsorted(zs, xs, side="right") / n
    lim = asymptotics.limit_cdf(xs)
    dens = np.full(grid_size, np.inf)
    dens[:-1] = asymptotics.zero_density(xs[:-1])
    return [(float(x), float(e), float(c), float(d), sup) for x, e, c, d in zip(xs, emp, lim, dens)]


def cmd_density(args) -> int:
    p = parse_params(args.params)
    if args.n < 10 or args.grid_size < 2:
        raise UsageError("need --n >= 10 and --grid-size >= 2")
    rows = density_rows(p, args.n, args.grid_size)
    _write_csv(
        ("x", "empirical_cdf", "limit_cdf", "limit_density", "sup_distance"),
        [tuple(repr(v) for v in r) for r in rows],
        sys.stdout,
    )
    return EXIT_OK


# --------------------------------------------------------------------------
# eval
# --------------------------------------------------------------------------


def _need(value, flag, what):
    if value is None:
        raise UsageError(f"eval {what} needs {flag}")
    return value


def _eval_lines(args) -> list:
    p = parse_params(args.params, allow_degenerate=args.allow_degenerate)
    mode = _mode(p)
    obj = args.object
    if obj == "weight":
        x = float(_need(args.x, "--x", obj))
        which = args.which
        val = weight_eval(p, x, which, args.deriv)
        if p.degenerate:
            src = "closed form b x^(b-1)" if which == 0 else "closed form a x^(a-1)"
        else:
            src = "K x^(a-1) (1-x)^(delta-1) 2F1(c-b, d-b; delta; 1-x)"
            if which == 1:
                src += " at (a, b+1; c+1, d)"
        return [f"w{which}" + ("'" * args.deriv) + f"({x}) = {val!r}", "mode: float", f"formula: {src}"]
    if obj == "typeii":
        n = args.n if args.n is not None else 1
        P = typeii.typeii_coeffs(p, n)
        lines = [f"P_{n}(x) = {P}", f"mode: {mode}", "formula: terminating 3F2 coefficients"]
        if args.x is not None:
            lines.insert(1, f"P_{n}({args.x}) = {float(typeii.evaluate(p, n, float(args.x)))!r}")
        return lines
    if obj == "typei":
        n = args.n if args.n is not None else 1
        pair = typei.typei_pair(p, n)
        lines = [f"A_{n}(x) = {pair.A}", f"B_{n}(x) = {pair.B}", f"mode: {mode}", "formula: rising operator from the shifted pair"]
        if args.x is not None:
            lines.insert(2, f"Q_{n}({args.x}) = {float(typei.typei_function_eval(p, n, float(args.x), pair=pair))!r}")
        return lines
    if obj == "ratio":
        n = args.n if args.n is not None else 120
        x = complex(_need(args.x, "--x", obj).replace(" ", ""))
        rho = asymptotics.ratio_rho(x)
        emp = asymptotics.empirical_ratio(p, n, x)
        return [
            f"rho({args.x}) = {rho!r}",
            f"P_{n}/P_{n + 1}({args.x}) = {emp!r}",
            f"difference = {abs(emp - rho)!r}",
            "mode: float",
            "formula: root of the limiting cubic near 1/x, certified branch; ratio by the recurrence",
        ]
    if obj == "mh":
        n = args.n if args.n is not None else 32
        z = float(_need(args.z, "--z", obj))
        scaled = float(asymptotics.mehler_heine_scaled(p, n, z)[0])
        limit = float(entire_0f2(float(p.a), float(p.b), -z / 4))
        return [
            f"scaled P_{n}(z/n^3) at z={z} = {scaled!r}",
            f"0F2(-; a, b; -z/4) = {limit!r}",
            f"difference = {abs(scaled - limit)!r}",
            "mode: float",
            "formula: Pochhammer-scaled recurrence value against the entire 0F2 limit",
        ]
    raise UsageError(f"unknown object {obj!r}")


def cmd_eval(args) -> int:
    try:
        lines = _eval_lines(args)
    except ValueError as exc:
        if isinstance(exc, ParameterError):
            raise
        raise UsageError(str(exc)) from exc
    print("\n".join(lines))
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mophyp", description="Multiple orthogonal polynomials for a hypergeometric weight pair.")
    ap.add_argument("--version", action="version", version=f"mophyp {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites and emit a JSON report")
    v.add_argument("--params", required=True, help="a,b,c,d (fractions select exact arithmetic)")
    v.add_argument("--n-max", type=int, default=12, help="largest degree for exact suites")
    v.add_argument("--float-n-max", type=int, default=80, help="largest degree for float and asymptotic suites")
    v.add_argument("--suites", default="all", help=f"'all' or a comma list of: {', '.join(SUITE_NAMES)}")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--allow-degenerate", action="store_true", help="admit the boundary c=a, d=b+1")
    v.add_argument("--output", help="write the report here instead of stdout")
    v.add_argument("--jobs", type=int, default=1, help="run suites in this many processes")
    v.set_defaults(func=cmd_verify)

    z = sub.add_parser("zeros", help="zeros of P_n with oracle residuals")
    z.add_argument("--params", required=True)
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--format", choices=("csv", "json"), default="csv")
    z.set_defaults(func=cmd_zeros)

    d = sub.add_parser("density", help="empirical and limiting zero distributions as CSV")
    d.add_argument("--params", required=True)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--grid-size", type=int, default=200)
    d.set_defaults(func=cmd_density)

    e = sub.add_parser("eval", help="evaluate a single object")
    e.add_argument("object", choices=("weight", "typeii", "typei", "ratio", "mh"))
    e.add_argument("--params", default="1,2,3,4")
    e.add_argument("--n", type=int)
    e.add_argument("--x", help="point (complex allowed for ratio, e.g. 2+1j)")
    e.add_argument("--z", help="Mehler-Heine variable")
    e.add_argument("--which", type=int, choices=(0, 1), default=0)
    e.add_argument("--deriv", type=int, default=0)
    e.add_argument("--allow-degenerate", action="store_true")
    e.set_defaults(func=cmd_eval)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParameterError) as exc:
        print(f"mophyp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
