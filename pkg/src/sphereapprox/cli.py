"""Command line front end.

Exit status is 0 on success, 1 on usage or input errors and 2 when a
verification fails.
"""
from __future__ import annotations

import argparse
import io
import json
import re
import sys

import numpy as np

from . import approx, catalog, coxeter, domain
from .coxeter import CoxeterSymbol, InvalidSymbolError, as_symbol
from .geom import PreconditionError

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

POINT_WORDS = ("x", "y", "z", "m1", "m2", "m3", "centroid", "chebyshev")
_FLOAT = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_NAMED_RE = re.compile(rf"^\s*(?:({_FLOAT})\s*\*\s*)?([a-z0-9]+)\s*$")
_TRIPLE_RE = re.compile(rf"^\s*\(\s*({_FLOAT})\s*,\s*({_FLOAT})\s*,\s*({_FLOAT})\s*\)\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v: float, digits: int) -> str:
    return f"{v + 0.0:.{digits}f}"


def _fmt_vec(v, digits: int) -> str:
    return "(" + ", ".join(_fmt(float(c), digits) for c in v) + ")"


def _full(v: float) -> str:
    # 17 significant digits; adding 0.0 turns -0.0 into 0.0
    return f"{float(v) + 0.0:.17g}"


def export(points, fmt: str, header: bool = False) -> str:
    """Serialize points as csv, obj or json text."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise PreconditionError("nothing to export: the point list is empty")
    pts = pts.reshape(-1, 3)
    if fmt == "csv":
        lines = ["x,y,z"] if header else []
        lines += [",".join(_full(c) for c in p) for p in pts]
    elif fmt == "obj":
        lines = ["v " + " ".join(_full(c) for c in p) for p in pts]
    elif fmt == "json":
        lines = [json.dumps([[float(c) + 0.0 for c in p] for p in pts])]
    else:
        raise UsageError(f"unknown export format {fmt!r}")
    return "\n".join(lines) + "\n"


def read_csv(text: str) -> np.ndarray:
    rows = [ln for ln in text.splitlines() if ln.strip() and ln.strip() != "x,y,z"]
    return np.array([[float(c) for c in ln.split(",")] for ln in rows])


def triangle_for_symbol(symbol: CoxeterSymbol) -> domain.SphericalTriangle:
    return domain.triangle_for(coxeter.build_generators(symbol))


def resolve_point(spec: str, symbol: CoxeterSymbol, g: coxeter.FiniteGroup,
                  tri: domain.SphericalTriangle) -> np.ndarray:
    """Turn a point spec (``m3``, ``0.9945*m2``, ``chebyshev`` or ``(a,b,c)``) into a seed."""
    m = _TRIPLE_RE.match(spec)
    if m:
        p = np.array([float(c) for c in m.groups()])
        folded, _ = domain.fold_to_domain(p, g)
        return folded
    m = _NAMED_RE.match(spec)
    if not m or m.group(2) not in POINT_WORDS:
        raise UsageError(f"bad point spec {spec!r}; use [<float>*]{{{'|'.join(POINT_WORDS)}}} or (a,b,c)")
    scale = float(m.group(1)) if m.group(1) else 1.0
    name = m.group(2)
    if name == "chebyshev":
        base = approx.chebyshev_center(tri, symbol).center
    else:
        base = tri.point(name)
    return scale * base


def _setup(args) -> tuple[CoxeterSymbol, coxeter.FiniteGroup, domain.SphericalTriangle]:
    symbol = as_symbol(args.symbol)
    return symbol, coxeter.generate_group(symbol), triangle_for_symbol(symbol)


def _seed_from_args(args, symbol, g, tri) -> np.ndarray:
    return resolve_point(args.point, symbol, g, tri) * args.scale


def cmd_groups(args, out) -> int:
    ok = True
    for symbol in (CoxeterSymbol(3, 3), CoxeterSymbol(3, 4), CoxeterSymbol(3, 5)):
        g = coxeter.generate_group(symbol)
        pres = coxeter.verify_presentation(g)
        ok &= pres and len(g) == symbol.order
        out.write(f"{symbol}:{len(g)}  rotations:{len(coxeter.rotation_subgroup(g))}  "
                  f"presentation:{'ok' if pres else 'FAILED'}\n")
    for n in range(2, args.max_n + 1):
        symbol = CoxeterSymbol(2, n)
        g = coxeter.generate_group(symbol)
        pres = coxeter.verify_presentation(g)
        ok &= pres and len(g) == 4 * n
        out.write(f"{symbol}:{len(g)}  rotations:{len(coxeter.rotation_subgroup(g))}  "
                  f"presentation:{'ok' if pres else 'FAILED'}\n")
    out.write("[2,n]:4n\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_triangle(args, out) -> int:
    symbol = as_symbol(args.symbol)
    tri = domain.fundamental_triangle(symbol)
    gens = tri.generators
    for i, n in enumerate(gens.normals, 1):
        out.write(f"n{i} = {_fmt_vec(n, args.digits)}\n")
    for name in ("x", "y", "z", "m1", "m2", "m3"):
        out.write(f"{name:<2} = {_fmt_vec(tri.point(name), args.digits)}\n")
    return EXIT_OK


def cmd_center(args, out) -> int:
    symbol = as_symbol(args.symbol)
    tri = domain.fundamental_triangle(symbol)
    sol = approx.chebyshev_center(tri, symbol)
    d = args.digits
    out.write(f"group  {symbol}\n")
    out.write(f"center {_fmt_vec(sol.center, d)}\n")
    out.write(f"radius {_fmt(sol.radius, d)}\n")
    out.write(f"(t,s)  {_fmt_vec(sol.bisector_params, d)}\n")
    return EXIT_OK


def cmd_orbit(args, out) -> int:
    symbol, g, tri = _setup(args)
    p = _seed_from_args(args, symbol, g, tri)
    orb = coxeter.orbit(g, p, dedup=args.tolerance)
    if args.format == "table":
        out.write(f"# {symbol} orbit of {_fmt_vec(p, args.digits)}: {len(orb)} points\n")
        for q in orb.points:
            out.write(" ".join(f"{float(c) + 0.0:>{args.digits + 4}.{args.digits}f}" for c in q) + "\n")
    else:
        out.write(export(orb.points, args.format, args.header))
    return EXIT_OK


def cmd_export(args, out) -> int:
    symbol, g, tri = _setup(args)
    p = _seed_from_args(args, symbol, g, tri)
    fmt = "csv" if args.format == "table" else args.format
    text = export(coxeter.orbit(g, p, dedup=args.tolerance).points, fmt, args.header)
    if args.output in (None, "-"):
        out.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def _write_report(rep: approx.HausdorffReport, args, out) -> None:
    d = args.digits
    if args.format == "json":
        out.write(json.dumps(rep.as_dict()) + "\n")
        return
    out.write(f"seed            {_fmt_vec(rep.seed, d)}\n")
    out.write(f"scale           {_fmt(rep.scale, d)}\n")
    out.write(f"orbit size      {rep.orbit_size}\n")
    out.write(f"sphere->orbit   {_fmt(rep.sphere_to_orbit, d)}\n")
    out.write(f"orbit->sphere   {_fmt(rep.orbit_to_sphere, d)}\n")
    out.write(f"hausdorff       {_fmt(rep.total, d)}   [{rep.method}]\n")


def cmd_distance(args, out) -> int:
    symbol, g, tri = _setup(args)
    p = _seed_from_args(args, symbol, g, tri)
    _write_report(approx.hausdorff_to_sphere_exact(g, tri, p), args, out)
    if args.samples_given:
        _write_report(approx.hausdorff_to_sphere_sampled(coxeter.orbit(g, p).points, args.samples), args, out)
    return EXIT_OK


def cmd_scale(args, out) -> int:
    symbol, g, tri = _setup(args)
    direction = resolve_point(args.point, symbol, g, tri)
    t, rep = approx.optimal_scale(g, tri, direction)
    out.write(f"optimal scale   {_fmt(t, args.digits)}\n")
    _write_report(rep, args, out)
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    tol = args.tolerance if args.tolerance_given else None
    report = catalog.reproduce_catalog(
        tol_exact=tol or catalog.TOL_EXACT, tol_grid=tol or catalog.TOL_GRID)
    if args.format == "json":
        out.write(json.dumps(report.records(), indent=1) + "\n")
    elif args.format == "csv":
        recs = report.records()
        keys = ["name", "symbol", "scale", "expected", "computed", "delta", "pass"]
        out.write(",".join(keys) + "\n")
        for r in recs:
            out.write(",".join(_full(r[k]) if isinstance(r[k], float) else str(r[k]) for k in keys) + "\n")
    else:
        out.write(report.to_text(args.digits))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_theorem(args, out) -> int:
    report = catalog.theorem_check(samples=args.samples)
    out.write(report.to_text(args.digits))
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_verify(args, out) -> int:
    ok = True
    rng = np.random.default_rng(args.seed)
    for symbol in (CoxeterSymbol(3, 3), CoxeterSymbol(3, 4), CoxeterSymbol(3, 5)):
        g = coxeter.generate_group(symbol)
        pres = coxeter.verify_presentation(g) and len(g) == symbol.order
        out.write(f"{'pass' if pres else 'FAIL'}  presentation {symbol}: order {len(g)}\n")
        ok &= pres
        for check in (domain.check_dirichlet, domain.check_same_side):
            rep = check(g, trials=args.trials, seed=args.seed)
            out.write(f"{'pass' if rep.ok else 'FAIL'}  {rep.summary()}\n")
            ok &= rep.ok
        tri = domain.fundamental_triangle(symbol)
        worst = 0.0
        for p in tri.cone.sample(args.oracle_seeds, rng, radius=1.5):
            exact = approx.hausdorff_to_sphere_exact(g, tri, p).total
            sampled = approx.hausdorff_to_sphere_sampled(coxeter.orbit(g, p).points, args.samples).total
            worst = max(worst, abs(exact - sampled))
        agree = worst <= args.oracle_tolerance
        out.write(f"{'pass' if agree else 'FAIL'}  oracle agreement {symbol}: {args.oracle_seeds} seeds, "
                  f"worst |exact - sampled| {worst:.2e}\n")
        ok &= agree
    out.write("overall: " + ("pass" if ok else "FAIL") + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "groups": (cmd_groups, False, "list the reflection groups with their orders"),
    "triangle": (cmd_triangle, True, "print the fundamental triangle and side midpoints"),
    "center": (cmd_center, True, "Chebyshev center of the fundamental triangle"),
    "orbit": (cmd_orbit, True, "orbit of a point"),
    "distance": (cmd_distance, True, "Hausdorff distance from an orbit to the sphere"),
    "scale": (cmd_scale, True, "best radial scale for a generating direction"),
    "catalog": (cmd_catalog, False, "reproduce the Platonic/Archimedean solids table"),
    "theorem": (cmd_theorem, False, "find the best finite homogeneous approximation"),
    "verify": (cmd_verify, False, "run lemma checks and the sampling oracle"),
    "export": (cmd_export, True, "write an orbit as csv, obj or json"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--point", default="chebyshev",
                        help="x|y|z|m1|m2|m3|centroid|chebyshev, optionally '<float>*name', or '(a,b,c)'")
    common.add_argument("--scale", type=float, default=1.0, help="extra factor applied to the point")
    common.add_argument("--samples", type=int, default=None, help="sphere samples for the sampling oracle")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "obj", "json", "table"), default="table")
    common.add_argument("--digits", type=int, default=4)
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--header", action="store_true", help="csv: add an x,y,z header line")

    parser = _Parser(prog="sphereapprox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", metavar="verb", parser_class=_Parser)
    sub.required = True
    for verb, (_, needs_symbol, help_text) in COMMANDS.items():
        sp = sub.add_parser(verb, parents=[common], help=help_text)
        if needs_symbol:
            sp.add_argument("symbol", help="Coxeter symbol such as '[3,5]'")
        if verb == "groups":
            sp.add_argument("--max-n", type=int, default=12)
        if verb == "export":
            sp.add_argument("-o", "--output", default=None)
        if verb == "verify":
            sp.add_argument("--trials", type=int, default=100)
            sp.add_argument("--oracle-seeds", type=int, default=20)
            sp.add_argument("--oracle-tolerance", type=float, default=2e-3)
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    args.samples_given = args.samples is not None
    if args.samples is None:
        args.samples = approx.DEFAULT_SAMPLES
    args.tolerance_given = args.tolerance is not None
    if args.tolerance is None:
        args.tolerance = coxeter.DEDUP
    handler = COMMANDS[args.verb][0]
    try:
        return handler(args, out)
    except (InvalidSymbolError, UsageError, PreconditionError, domain.UnsupportedGroupError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"sphereapprox {args.verb}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sphereapprox {args.verb}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return run(argv)


def capture(argv) -> tuple[int, str]:
    buf = io.StringIO()
    code = run(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
