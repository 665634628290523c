"""Command-line front end.

    hbdisks gen --seed 1 --degree 5
    hbdisks verify --pair fig1 --suite hb --alpha -4
    hbdisks plot --pair fig7 --what levels --disk 2 --out fig7.svg

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import checks
from .analysis import (
    convexity_check,
    critical_values,
    level_curve_classify,
    min_modulus_on_halfcircle,
    re_R_monotonicity,
)
from .errors import FlatMinimum, HBDisksError
from .instances import NAMED
from .polynomial import TOL_ENV, InterlacingPair, RealPolynomial, default_tol
from .rng import gen
from .roots import hb_roots, wronskian_roots
from .svg import atomic_write, level_svg, omega_svg

LEVEL_RATIOS = (0.25, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0)


class InputError(Exception):
    pass


def _jsonable(o):
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(f"not serializable: {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_jsonable) + "\n"


def load_pair(args) -> tuple[InterlacingPair, dict]:
    """Pair from --pair (file or named instance) or from --seed/--degree."""
    src = args.pair
    if src is None:
        pair = gen(args.seed, args.degree)
        return pair, {"seed": args.seed, "degree": args.degree}
    if src in NAMED:
        return NAMED[src](), {"instance": src, "seed": None}
    try:
        with open(src) as fh:
            data = json.load(fh)
        return InterlacingPair.from_dict(data), {"pair_file": os.path.basename(src), "seed": data.get("seed")}
    except (OSError, ValueError, KeyError, TypeError, HBDisksError) as exc:
        raise InputError(f"cannot read pair from {src}: {exc}") from exc


def emit(text: str, out: str | None):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _need(fmt: str, allowed, command: str):
    if fmt not in allowed:
        raise InputError(f"{command} does not support --format {fmt}")


def cmd_gen(args) -> int:
    _need(args.format, ("json", "csv"), "gen")
    pair = gen(args.seed, args.degree)
    if args.format == "csv":
        rows = [("p", i + 1, repr(float(x))) for i, x in enumerate(pair.p_roots)]
        rows += [("q", i + 1, repr(float(x))) for i, x in enumerate(pair.q_roots)]
        emit(_csv(rows, ("poly", "index", "root")), args.out)
    else:
        emit(dumps({**pair.to_dict(), "seed": args.seed, "degree": args.degree}), args.out)
    return 0


def cmd_verify(args) -> int:
    _need(args.format, ("json", "csv"), "verify")
    pair, meta = load_pair(args)
    try:
        report = checks.run_suite(pair, args.suite, alpha=args.alpha, r=args.r, phi=args.phi,
                                  disk_index=args.disk, grid=args.grid or 512, seed=args.seed or 0)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    report.update(meta)
    report["tolerance"] = default_tol(1.0)
    if args.format == "csv":
        rows = [(c["name"], c["claim"], c["passed"], c.get("margin", "")) for c in report["checks"]]
        emit(_csv(rows, ("name", "claim", "passed", "margin")), args.out)
    else:
        emit(dumps(report), args.out)
    return 0 if report["passed"] else 1


def cmd_analyze(args) -> int:
    _need(args.format, ("json",), "analyze")
    pair, meta = load_pair(args)
    disks = [args.disk] if args.disk else list(range(1, pair.k))
    per_disk = []
    for j in disks:
        entry = {"j": j}
        try:
            mm = min_modulus_on_halfcircle(pair, j)
            entry["m"], entry["P"] = mm.m, mm.P
        except FlatMinimum:
            entry["m"], entry["P"] = None, None
        conv = convexity_check(pair, j)
        mono = re_R_monotonicity(pair, j)
        entry["convex"] = conv.convex
        entry["min_second_difference"] = conv.min_second_difference
        entry["re_R_decreasing"] = mono.monotone_decreasing
        entry["re_R_constant"] = mono.constant
        per_disk.append(entry)
    w = wronskian_roots(pair).roots
    report = {
        **meta,
        "pair": pair.to_dict(),
        "wronskian_roots": sorted(([z.real, z.imag] for z in w)),
        "critical_moduli": sorted(float(v) for v in np.abs(critical_values(pair))),
        "disks": per_disk,
    }
    emit(dumps(report), args.out)
    return 0


def cmd_levelcurves(args) -> int:
    _need(args.format, ("json", "csv"), "levelcurves")
    pair, meta = load_pair(args)
    disks = [args.disk] if args.disk else list(range(1, pair.k))
    grid = args.grid or 512
    rows, ok = [], True
    for j in disks:
        m = min_modulus_on_halfcircle(pair, j).m
        for ratio in LEVEL_RATIOS:
            try:
                rep = level_curve_classify(pair, j, ratio * m, grid, m=m)
                cls = rep.classification
            except HBDisksError as exc:
                cls = f"error: {exc}"
            expect = "tangent" if ratio == 1.0 else ("single-oval" if ratio < 1 else "two-arcs")
            ok &= cls == expect
            rows.append({"j": j, "ratio": ratio, "r": ratio * m, "m": m, "classification": cls,
                         "expected": expect})
    if args.format == "csv":
        emit(_csv([tuple(r.values()) for r in rows], tuple(rows[0].keys())), args.out)
    else:
        emit(dumps({**meta, "grid": grid, "passed": ok, "claim": "level curves split at the threshold m",
                    "levels": rows}), args.out)
    return 0 if ok else 1


def cmd_invert(args) -> int:
    from .wronski import invert_wronskian

    _need(args.format, ("json",), "invert")
    try:
        if args.u is None:
            raise InputError("invert needs --u FILE")
        with open(args.u) as fh:
            data = json.load(fh)
        u = RealPolynomial(np.asarray(data["u"]["coeffs"], dtype=float))
        k = data.get("k")
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read {args.u}: {exc}") from exc
    try:
        pair, stats = invert_wronskian(u, k, return_stats=True)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    emit(dumps({"pair": pair.to_dict(), "path": stats.to_dict()}), args.out)
    return 0


def cmd_plot(args) -> int:
    _need(args.format, ("svg",), "plot")
    pair, _ = load_pair(args)
    if args.what == "omega":
        hb = hb_roots(pair, 1j * args.alpha).roots if args.alpha else ()
        text = omega_svg(pair, wronskian_roots(pair).roots, hb)
    else:
        j = args.disk or 1
        if not 1 <= j < pair.k:
            raise InputError(f"disk index {j} out of range 1..{pair.k - 1}")
        text = level_svg(pair, j, grid=args.grid or 256)
    emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hbdisks", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--degree", type=int, default=4)
        p.add_argument("--pair", help="pair JSON file, or one of: " + ", ".join(NAMED))
        p.add_argument("--tol", type=float, help="base tolerance (overrides HBDISKS_TOL)")
        p.add_argument("--out")
        p.add_argument("--format", choices=("json", "svg", "csv"), default=fmt)
        p.add_argument("--disk", type=int)
        p.add_argument("--grid", type=int)
        p.add_argument("--alpha", type=float)
        p.add_argument("--r", type=float)
        p.add_argument("--phi", type=float)

    p = sub.add_parser("gen", help="random interlacing pair")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", default="all", choices=checks.SUITES + ("all",))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="per-disk quantities")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("levelcurves", help="level-curve classification sweep")
    common(p)
    p.set_defaults(func=cmd_levelcurves)

    p = sub.add_parser("invert", help="invert the Wronski map")
    common(p)
    p.add_argument("--u", help='JSON file {"u": {"coeffs": [...]}, "k": k}')
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("plot", help="SVG figure")
    common(p, fmt="svg")
    p.add_argument("--what", choices=("omega", "levels"), default="omega")
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get(TOL_ENV)
    try:
        if args.tol is not None:
            if not args.tol > 0:
                print("error: --tol must be positive", file=sys.stderr)
                return 2
            os.environ[TOL_ENV] = repr(args.tol)
        if not 2 <= args.degree <= 32:
            print("error: --degree must be in [2, 32]", file=sys.stderr)
            return 2
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        # main() may be called in-process; leave the environment as found
        if saved is None:
            os.environ.pop(TOL_ENV, None)
        else:
            os.environ[TOL_ENV] = saved

if __name__ == "__main__":
    sys.exit(main())
