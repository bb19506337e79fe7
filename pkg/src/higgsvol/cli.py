"""Command-line front end.

Subcommands: volume, motive, dt, crosscheck, count-curve, selftest.  Output
is deterministic (canonical symbol order, sorted JSON keys); exit code 0 on
success, 1 on a computational error, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebra, counting, mellit, schiffmann
from .curve import CurveModel, count_points, load_curve
from .errors import ComputationError

__all__ = ["main", "run"]


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="higgsvol",
        description="Exact volumes and motivic classes of semistable Higgs "
        "bundle moduli over curves.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def curve_flags(sp):
        sp.add_argument("--genus", type=int, help="genus of the curve")
        sp.add_argument("--numerator", help="zeta numerator c_0,...,c_2g")
        sp.add_argument("--q", type=int, help="finite field size (prime power)")
        sp.add_argument(
            "--weierstrass", help="long Weierstrass coefficients a1,a2,a3,a4,a6"
        )
        sp.add_argument(
            "--symbolic", action="store_true",
            help="leave q and the Weil symbols free",
        )
        sp.add_argument("--curve-file", help="JSON curve document")

    def common_flags(sp):
        sp.add_argument("--rank", type=int, help="rank r (>= 1)")
        sp.add_argument("--degree", type=int, default=0, help="degree d")
        sp.add_argument(
            "--route", choices=["mellit", "schiffmann", "both"],
            default="mellit", help="which pipeline to run",
        )
        sp.add_argument("--wmax", type=int, help="override the w-truncation")
        sp.add_argument("--dmax", type=int, help="override the z-truncation")
        sp.add_argument(
            "--format", choices=["json", "csv", "text"], default="json"
        )

    sp = sub.add_parser("volume", help="exact rational point-count volume")
    curve_flags(sp)
    common_flags(sp)

    sp = sub.add_parser("motive", help="symbolic rank/degree class")
    curve_flags(sp)
    common_flags(sp)

    sp = sub.add_parser("dt", help="table of fixed-slope invariants Omega(r,d)")
    curve_flags(sp)
    common_flags(sp)
    sp.add_argument(
        "--figure", help="also render a bar chart of the table to this path"
    )

    sp = sub.add_parser("crosscheck", help="run both pipelines and compare")
    curve_flags(sp)
    common_flags(sp)

    sp = sub.add_parser("count-curve", help="brute-force Weierstrass counting")
    curve_flags(sp)
    sp.add_argument(
        "--format", choices=["json", "csv", "text"], default="json"
    )

    sp = sub.add_parser("selftest", help="run the built-in property checks")
    sp.add_argument(
        "--format", choices=["json", "csv", "text"], default="json"
    )
    return p


def _parse_int_list(text: str):
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise SystemExit(2)


def _curve_from_args(args, parser) -> CurveModel:
    sources = [
        bool(getattr(args, "curve_file", None)),
        bool(getattr(args, "numerator", None)),
        bool(getattr(args, "weierstrass", None)),
        bool(getattr(args, "symbolic", False)),
    ]
    if sum(sources) != 1:
        parser.error(
            "exactly one curve source required: --curve-file, --numerator, "
            "--weierstrass or --symbolic"
        )
    try:
        if args.curve_file:
            with open(args.curve_file) as fh:
                return load_curve(json.load(fh))
        if args.weierstrass:
            if args.q is None:
                parser.error("--weierstrass requires --q")
            coeffs = _parse_int_list(args.weierstrass)
            if len(coeffs) != 5:
                parser.error("--weierstrass needs a1,a2,a3,a4,a6")
            return CurveModel.from_weierstrass(coeffs, args.q)
        if args.numerator:
            if args.genus is None or args.q is None:
                parser.error("--numerator requires --genus and --q")
            return CurveModel.from_numerator(
                args.genus, _parse_int_list(args.numerator), args.q
            )
        if args.genus is None:
            parser.error("--symbolic requires --genus")
        return CurveModel.symbolic(args.genus)
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(str(exc))


def _curve_descriptor(c: CurveModel) -> dict:
    doc = {"genus": c.genus, "mode": c.mode}
    if c.q is not None:
        doc["q"] = int(c.q)
    if c.numerator is not None:
        doc["numerator"] = [str(x) for x in c.numerator]
    if c.weierstrass is not None:
        doc["weierstrass"] = list(c.weierstrass)
    return doc


def _value_doc(v: Fraction) -> dict:
    return {"num": str(v.numerator), "den": str(v.denominator)}


def _emit(doc: dict, fmt: str, rows=None, header=None) -> None:
    """Write the result.  JSON carries the full schema; csv/text are the
    delimited row views (rows of strings)."""
    if fmt == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
        return
    sep = "," if fmt == "csv" else "\t"
    if header:
        print(sep.join(header))
    for row in rows or []:
        print(sep.join(str(x) for x in row))


def _result_doc(args, curve, result: dict, warnings=None) -> dict:
    inp = {
        "subcommand": args.subcommand,
        "curve": _curve_descriptor(curve),
    }
    for key in ("rank", "degree", "route", "wmax", "dmax", "format"):
        if hasattr(args, key) and getattr(args, key) is not None:
            inp[key] = getattr(args, key)
    return {"input": inp, "result": result, "warnings": list(warnings or [])}


def _symbolic_class(c: CurveModel, r: int, d: int, route: str):
    if route == "mellit":
        return mellit.higgs_class_mellit(c, r, d)
    return schiffmann.higgs_class_sch(c, r, d)


def _truncations(c, r, d, route):
    wmax = r
    dmax = None
    if route == "schiffmann":
        dmax = d + (schiffmann._shift_exponent(c, r, d) + 1) * r
    return wmax, dmax


def _cmd_volume(args, parser) -> int:
    c = _curve_from_args(args, parser)
    if args.rank is None or args.rank < 1:
        parser.error("volume requires --rank >= 1")
    route = args.route if args.route != "both" else "mellit"
    res = counting.volume(c, args.rank, args.degree, route=route)
    wmax = args.wmax if args.wmax is not None else res.w_max
    dmax = args.dmax if args.dmax is not None else res.d_max
    warnings = []
    if c.genus == 0:
        warnings.append("genus 0: formula evaluation only, unverified")
    result = {
        "value": _value_doc(res.value),
        "route": route,
        "wmax": wmax,
        "dmax": dmax if dmax is not None else 0,
    }
    doc = _result_doc(args, c, result, warnings)
    _emit(
        doc, args.format,
        rows=[[args.rank, args.degree, res.value, route]],
        header=["rank", "degree", "value", "route"],
    )
    return 0


def _cmd_motive(args, parser) -> int:
    c = _curve_from_args(args, parser)
    if args.rank is None or args.rank < 1:
        parser.error("motive requires --rank >= 1")
    if c.mode != "symbolic":
        parser.error("motive requires --symbolic (or a symbolic curve file)")
    route = args.route if args.route != "both" else "mellit"
    x = _symbolic_class(c, args.rank, args.degree, route)
    text = algebra.canonical_str(c.ctx, x)
    wmax, dmax = _truncations(c, args.rank, args.degree, route)
    result = {
        "symbolic": text,
        "route": route,
        "wmax": args.wmax if args.wmax is not None else wmax,
        "dmax": args.dmax if args.dmax is not None
        else (dmax if dmax is not None else 0),
    }
    doc = _result_doc(args, c, result)
    _emit(
        doc, args.format,
        rows=[[args.rank, args.degree, text, route]],
        header=["rank", "degree", "class", "route"],
    )
    return 0


def _cmd_dt(args, parser) -> int:
    c = _curve_from_args(args, parser)
    if args.rank is None or args.rank < 1:
        parser.error("dt requires --rank >= 1 (the maximal rank)")
    route = args.route if args.route != "both" else "mellit"
    d_hi = args.dmax if args.dmax is not None else 2
    window = range(0, d_hi + 1)
    table = counting.dt_invariants(c, args.rank, window, route=route)
    rows = [
        [r, d, str(table[(r, d)])]
        for (r, d) in sorted(table)
    ]
    result = {
        "table": [
            {"rank": r, "degree": d, "omega": _value_doc(table[(r, d)])}
            for (r, d) in sorted(table)
        ],
        "route": route,
        "wmax": args.wmax if args.wmax is not None else args.rank,
        "dmax": d_hi,
    }
    doc = _result_doc(args, c, result)
    _emit(doc, args.format, rows=rows, header=["rank", "degree", "omega"])
    if args.figure:
        _render_dt_figure(table, args.figure)
    return 0


def _render_dt_figure(table: dict, path: str) -> None:
    """Bar chart of Omega(r, d) grouped by rank, written to a file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    keys = sorted(table)
    labels = [f"({r},{d})" for r, d in keys]
    values = [float(table[k]) for k in keys]
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(keys)), 3.2))
    ax.bar(range(len(keys)), values, color="#336699")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("Omega(r, d)")
    ax.set_title("Fixed-slope invariants")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def _cmd_crosscheck(args, parser) -> int:
    c = _curve_from_args(args, parser)
    if args.rank is None or args.rank < 1:
        parser.error("crosscheck requires --rank >= 1")
    if c.mode != "symbolic":
        parser.error("crosscheck compares symbolic classes; use --symbolic")
    a = mellit.higgs_class_mellit(c, args.rank, args.degree)
    b = schiffmann.higgs_class_sch(c, args.rank, args.degree)
    equal = a == b
    wmax, dmax = _truncations(c, args.rank, args.degree, "schiffmann")
    result = {
        "equal": equal,
        "symbolic": algebra.canonical_str(c.ctx, a),
        "route": "both",
        "wmax": wmax,
        "dmax": dmax,
    }
    doc = _result_doc(args, c, result)
    _emit(
        doc, args.format,
        rows=[[args.rank, args.degree, equal]],
        header=["rank", "degree", "equal"],
    )
    return 0 if equal else 1


def _cmd_count_curve(args, parser) -> int:
    if not args.weierstrass or args.q is None:
        parser.error("count-curve requires --weierstrass and --q")
    coeffs = _parse_int_list(args.weierstrass)
    if len(coeffs) != 5:
        parser.error("--weierstrass needs a1,a2,a3,a4,a6")
    pc = count_points(coeffs, args.q)
    numerator = [1, -pc.trace, args.q]
    result = {
        "N": pc.n_points,
        "trace": pc.trace,
        "numerator": numerator,
        "route": "count",
        "wmax": 0,
        "dmax": 0,
    }
    doc = {
        "input": {
            "subcommand": "count-curve",
            "q": args.q,
            "weierstrass": coeffs,
        },
        "result": result,
        "warnings": [],
    }
    _emit(
        doc, args.format,
        rows=[[args.q, pc.n_points, pc.trace, " ".join(map(str, numerator))]],
        header=["q", "N", "trace", "numerator"],
    )
    return 0


def _selftest_checks():
    """Quick end-to-end property checks; yields (name, bool)."""
    from .partitions import enumerate_partitions

    c1 = CurveModel.symbolic(1)
    ctx = c1.ctx
    yield "partition-count-p6", len(enumerate_partitions(6)) == 11
    m = mellit.higgs_class_mellit(c1, 1, 0)
    s = schiffmann.higgs_class_sch(c1, 1, 0)
    yield "cross-pipeline-r1", m == s
    yield "cross-pipeline-r2-d1", (
        mellit.higgs_class_mellit(c1, 2, 1)
        == schiffmann.higgs_class_sch(c1, 2, 1)
    )
    cw = CurveModel.from_weierstrass((0, 0, 1, 0, 0), 2)
    v = counting.volume(cw, 1, 0).value
    yield "rank1-closed-form", v == counting.rank1_volume_oracle(cw)
    inv = algebra.substitute(ctx, m, {ctx.a[0]: ctx.q / ctx.a[0]})
    yield "weil-involution", inv == m
    dt = counting.dt_invariants(cw, 1, [0, 1])
    yield "dt-rank1", all(
        dt[(1, d)] == cw.q * cw.n_points() for d in (0, 1)
    )


def _cmd_selftest(args, parser) -> int:
    results = []
    ok = True
    for name, passed in _selftest_checks():
        results.append({"check": name, "passed": bool(passed)})
        ok = ok and passed
    doc = {
        "input": {"subcommand": "selftest"},
        "result": {
            "passed": ok,
            "checks": results,
            "route": "both",
            "wmax": 2,
            "dmax": 2,
        },
        "warnings": [],
    }
    _emit(
        doc, args.format,
        rows=[[r["check"], r["passed"]] for r in results],
        header=["check", "passed"],
    )
    return 0 if ok else 1


_DISPATCH = {
    "volume": _cmd_volume,
    "motive": _cmd_motive,
    "dt": _cmd_dt,
    "crosscheck": _cmd_crosscheck,
    "count-curve": _cmd_count_curve,
    "selftest": _cmd_selftest,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return _DISPATCH[args.subcommand](args, parser)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    except ComputationError as exc:
        print(
            json.dumps(
                {
                    "error": type(exc).__name__,
                    "message": str(exc),
                },
                sort_keys=True,
            ),
            file=sys.stderr,
        )
        return 1


def main() -> None:
    sys.exit(run())
