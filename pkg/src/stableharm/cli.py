"""Command-line front end.

Maps travel between subcommands as JSON, read from a file argument or from
stdin when the argument is ``-``.  Complex flags accept ``a+bi`` or polar
``r@theta``; values starting with a minus sign need ``--eps=-1+0.5i`` form.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import sys

from . import bohr, bounds, catalog, harmonic, invariance, numcheck
from .errors import DomainError
from .grid import GridSpec
from .harmonic import HarmonicMap
from .series import DEFAULT_ORDER, MAX_ORDER, PowerSeries


def parse_complex(text: str) -> complex:
    text = text.strip().replace(" ", "")
    if "@" in text:
        mod, arg = text.split("@", 1)
        return cmath.rect(float(mod), float(arg))
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_radii(text: str) -> list:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of radii: {text!r}") from None


def parse_automorphism(text: str) -> invariance.DiskAutomorphism:
    a, _, theta = text.rpartition(",")
    if not a:
        raise argparse.ArgumentTypeError("automorphism must be given as a,theta")
    return invariance.DiskAutomorphism(parse_complex(a), float(theta))


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _load_map(path: str) -> HarmonicMap:
    data = _load_json(path)
    if "h" not in data:
        raise DomainError("expected a harmonic map JSON object with 'h' and 'g'")
    return HarmonicMap.from_json(data)


def _dump(obj, out):
    json.dump(obj, out, indent=2)
    out.write("\n")


def _fmt(x: float) -> str:
    return repr(float(x))


def _series_csv(columns: dict) -> str:
    """Coefficient table; imaginary columns appear only when some coefficient is non-real."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    complex_valued = any(abs(c.imag) > 0 for s in columns.values() for c in s.coeffs)
    header = ["n"]
    for name in columns:
        header += [f"{name}_re", f"{name}_im"] if complex_valued else [name]
    w.writerow(header)
    order = min(s.order for s in columns.values())
    for n in range(order + 1):
        row = [n]
        for s in columns.values():
            c = s.coeffs[n]
            row += [_fmt(c.real), _fmt(c.imag)] if complex_valued else [_fmt(c.real)]
        w.writerow(row)
    return buf.getvalue()


def _build_catalog(args):
    name = args.name
    if name == "V":
        if args.n is None or args.alpha is None:
            raise DomainError("catalog V needs --n and --alpha")
        return catalog.v_alpha(args.n, args.alpha, args.order)
    if name == "identity":
        return harmonic.identity_map(args.order)
    return catalog.CATALOG[name](args.order)


def cmd_catalog(args, out):
    obj = _build_catalog(args)
    if args.format == "csv":
        cols = {"a_n": obj} if isinstance(obj, PowerSeries) else {"a_n": obj.h, "b_n": obj.g}
        out.write(_series_csv(cols))
    else:
        _dump(obj.to_json(), out)


def cmd_slice(args, out):
    f = _load_map(args.map)
    _dump(harmonic.analytic_slice(f, args.eps).to_json(), out)


def cmd_rotate(args, out):
    f = _load_map(args.map)
    _dump(harmonic.epsilon_rotate(f, args.eps).to_json(), out)


def cmd_transform(args, out):
    f = _load_map(args.map)
    if args.affine is not None:
        g = invariance.affine_transform(f, args.affine)
    else:
        g = invariance.koebe_transform(f, args.auto, max_shift=args.max_shift)
    _dump(g.to_json(), out)


def cmd_bounds_check(args, out):
    f = _load_map(args.map)
    report = bounds.check_coeff_bounds(f, bounds.get_profile(args.profile), args.upto)
    _dump(report.to_json(), out)


def cmd_growth_table(args, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["r", "lower", "upper", "covering_radius"])
    for r in args.radii:
        lo, hi = bounds.growth_interval(args.alpha, r)
        w.writerow([_fmt(r), _fmt(lo), _fmt(hi), _fmt(bounds.covering_radius(args.alpha))])


def cmd_distortion_table(args, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["r", "jacobian_lower", "jacobian_upper", "h_prime_bound", "g_prime_bound"])
    for r in args.radii:
        jl, ju = bounds.jacobian_interval(args.alpha, args.b1, r)
        hb, gb = bounds.derivative_bounds(args.alpha, args.b1, r, args.variant)
        w.writerow([_fmt(r), _fmt(jl), _fmt(ju), _fmt(hb), _fmt(gb)])


def cmd_bohr_radius(args, out):
    _dump(bohr.bohr_radius(bounds.get_profile(args.profile)).to_json(), out)


def cmd_bohr_check(args, out):
    f = _load_map(args.map)
    _dump(bohr.bohr_check(f, bounds.get_profile(args.profile), args.r).to_json(), out)


def cmd_stability_table(args, out):
    f = _load_map(args.map)
    samples = []
    if args.eps_circle:
        samples += numcheck.eps_circle(args.eps_circle)
    if args.eps_disk:
        samples += numcheck.eps_disk(args.eps_disk)
    if not samples:
        raise DomainError("give --eps-circle and/or --eps-disk")
    grid = GridSpec(n_radii=args.radii, r_max=args.r_max, n_angles=args.angles)
    out.write(numcheck.stability_scan(f, samples, grid).to_csv())


def _order(text: str) -> int:
    n = int(text)
    if not 1 <= n <= MAX_ORDER:
        raise argparse.ArgumentTypeError(f"order must lie in 1..{MAX_ORDER}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stableharm", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", help="dump a named function as JSON or CSV")
    c.add_argument("name", choices=["k", "l", "K", "L", "M", "V", "identity"])
    c.add_argument("--order", type=_order, default=DEFAULT_ORDER)
    c.add_argument("--format", choices=["json", "csv"], default="json")
    c.add_argument("--n", type=int, help="exponent n for V")
    c.add_argument("--alpha", type=parse_complex, help="parameter alpha for V")
    c.set_defaults(func=cmd_catalog)

    for name, func, help_ in (
        ("slice", cmd_slice, "analytic slice h + eps g"),
        ("rotate", cmd_rotate, "rotated map h + conj(eps g)"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("map")
        s.add_argument("--eps", type=parse_complex, required=True)
        s.set_defaults(func=func)

    t = sub.add_parser("transform", help="affine or automorphism transform")
    t.add_argument("map")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--affine", type=parse_complex)
    g.add_argument("--auto", type=parse_automorphism, help="a,theta")
    t.add_argument("--max-shift", type=float, default=invariance.MAX_SHIFT)
    t.set_defaults(func=cmd_transform)

    b = sub.add_parser("bounds-check", help="coefficient bounds of a class profile")
    b.add_argument("map")
    b.add_argument("--profile", required=True)
    b.add_argument("--upto", type=int, required=True)
    b.set_defaults(func=cmd_bounds_check)

    gt = sub.add_parser("growth-table", help="growth interval and covering radius")
    gt.add_argument("--alpha", type=float, required=True)
    gt.add_argument("--radii", type=parse_radii, required=True)
    gt.set_defaults(func=cmd_growth_table)

    dt = sub.add_parser("distortion-table", help="Jacobian and derivative bounds")
    dt.add_argument("--alpha", type=float, required=True)
    dt.add_argument("--b1", type=float, required=True, help="|b1|")
    dt.add_argument("--radii", type=parse_radii, required=True)
    dt.add_argument("--variant", choices=[v.value for v in bounds.Variant], default="LEMMA_B")
    dt.set_defaults(func=cmd_distortion_table)

    br = sub.add_parser("bohr-radius", help="Bohr radius of a class profile")
    br.add_argument("--profile", required=True)
    br.set_defaults(func=cmd_bohr_radius)

    bc = sub.add_parser("bohr-check", help="majorant sum against the covering distance")
    bc.add_argument("map")
    bc.add_argument("--profile", required=True)
    bc.add_argument("--r", type=float, required=True)
    bc.set_defaults(func=cmd_bohr_check)

    st = sub.add_parser("stability-table", help="univalence/convexity of slices over eps samples")
    st.add_argument("map")
    st.add_argument("--eps-circle", type=int, default=0)
    st.add_argument("--eps-disk", type=int, default=0)
    st.add_argument("--r-max", type=float, default=numcheck.STABILITY_GRID.r_max)
    st.add_argument("--radii", type=int, default=numcheck.STABILITY_GRID.n_radii)
    st.add_argument("--angles", type=int, default=numcheck.STABILITY_GRID.n_angles)
    st.set_defaults(func=cmd_stability_table)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (DomainError, ValueError, KeyError, OSError) as exc:
        print(f"stableharm {args.command}: {exc}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    sys.exit(main())
