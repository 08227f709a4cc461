"""Command-line entry point: ``cantorval <subcommand> [options]``.

Exit codes: 0 success, 2 bad usage or parameters, 3 enumeration guard
exceeded, 4 digit-conversion oracle failure. Errors are one JSON line on
stderr.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from fractions import Fraction

from . import family, fractal_dim, ifs, series
from .numerics import (DEFAULT_MAX_LEAVES, EnumerationGuardExceeded,
                       format_decimal, format_rational, interval_set_to_json,
                       measure, parse_rational)
from .render import DiagramSpec, render_svg

EXIT_USAGE, EXIT_GUARD, EXIT_ORACLE = 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rationals(text: str) -> list[Fraction]:
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _depths(text: str) -> list[int]:
    if "-" in text and "," not in text:
        a, b = text.split("-")
        return list(range(int(a), int(b) + 1))
    return _ints(text)


def _exact(x: Fraction, places: int) -> dict:
    return {"exact": format_rational(x), "decimal": format_decimal(x, places)}


def _load_ifs(text: str) -> ifs.IFS:
    if text.startswith("@"):
        with open(text[1:]) as fh:
            text = fh.read()
    return ifs.IFS.from_json(json.loads(text))


def _series_of(args) -> series.MultigeometricSeries:
    if args.l is not None:
        return series.kl_series(args.l)
    if args.coeffs is not None:
        if args.ratio is None:
            raise UsageError("--coeffs needs --ratio")
        return series.MultigeometricSeries(tuple(_rationals(args.coeffs)), parse_rational(args.ratio))
    raise UsageError("give --l or --coeffs/--ratio")


def _ifs_of(args) -> ifs.IFS:
    if args.l is not None:
        return family.psi_family(args.l)
    if args.ifs is not None:
        return _load_ifs(args.ifs)
    raise UsageError("give --l or --ifs")


def _need_l(args) -> int:
    if args.l is None:
        raise UsageError("this subcommand needs --l")
    return args.l


def cmd_classify(args):
    s = _series_of(args)
    return {"series": s.to_json(), **series.kakeya_classify(s).to_json()}


def cmd_cover(args):
    if args.side == "series":
        s = _series_of(args)
        cover = series.subsum_cover(s, args.depth, args.max_leaves)
    else:
        f = _ifs_of(args)
        cover = ifs.attractor_cover(f, args.depth, args.max_leaves)
    return {"side": args.side, "depth": args.depth,
            "measure": format_rational(measure(cover)), **interval_set_to_json(cover)}


def cmd_inner(args):
    l = _need_l(args)
    inner = family.inner_approximation(l, args.depth, args.max_leaves)
    return {"l": l, "depth": args.depth,
            "measure": format_rational(measure(inner)), **interval_set_to_json(inner)}


def cmd_measure(args):
    l = _need_l(args)
    cover = ifs.attractor_cover(family.psi_family(l), args.depth, args.max_leaves)
    inner = family.inner_approximation(l, args.depth, args.max_leaves)
    p = args.precision
    cover_m, inner_m = measure(cover), measure(inner)
    partial = family.interior_measure_partial(l, args.depth)
    return {"l": l, "depth": args.depth,
            "cover_measure": format_rational(cover_m),
            "cover_measure_decimal": format_decimal(cover_m, p),
            "inner_measure": format_rational(inner_m),
            "inner_measure_decimal": format_decimal(inner_m, p),
            "interior_partial": format_rational(partial),
            "interior_partial_decimal": format_decimal(partial, p)}


def cmd_dimension(args):
    if args.ratios is not None:
        return {"similarity_dimension": ifs.moran_dimension(_rationals(args.ratios), args.tol)}
    f = _ifs_of(args)
    out = {"similarity_dimension": ifs.moran_dimension(f.ratios, args.tol)}
    if args.l is not None:
        l = args.l
        out["boundary_dimension"] = family.boundary_dimension(l)
        out["n_moran_dimension"] = family.n_moran_solve(2 * l, Fraction(1, 2 * l + 2), args.tol)
    return out


def cmd_boxcount(args):
    l = _need_l(args)
    counts = [fractal_dim.boundary_box_count(l, n, args.max_leaves) for n in _depths(args.depths)]
    slope = fractal_dim.dimension_fit(counts) if len(counts) >= 2 else None
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("depth,count\n")
        for c in counts:
            buf.write(f"{c.depth},{c.count}\n")
        if slope is not None:
            buf.write(f"# dimension_fit,{slope!r}\n")
        return buf.getvalue()
    return {"l": l, "counts": [{"depth": c.depth, "count": c.count} for c in counts],
            "dimension_fit": slope, "boundary_dimension": family.boundary_dimension(l)}


def cmd_convert(args):
    l = _need_l(args)
    if args.digits is not None:
        word = family.DigitWord(tuple(_ints(args.digits)), l)
        out = family.convert_digits(word)
        return {**out.to_json(), "value": format_rational(out.value)}
    if args.point is not None:
        a = parse_rational(args.point)
        eps = parse_rational(args.eps)
        b = family.approximate_point(a, l, eps)
        return {"l": l, "point": format_rational(a), "eps": format_rational(eps),
                "approximation": format_rational(b)}
    raise UsageError("convert needs --digits or --point")


def cmd_render(args):
    l = _need_l(args)
    f = family.psi_family(l)
    rows = [(f"cover n={n}", ifs.attractor_cover(f, n, args.max_leaves))
            for n in range(args.depth + 1)]
    if args.with_inner:
        rows += [(f"inner n={n}", family.inner_approximation(l, n, args.max_leaves))
                 for n in range(args.depth + 1)]
    spec = DiagramSpec(rows, highlight=family.inner_interval(l), width=args.width,
                       row_height=args.row_height, x_range=ifs.hull(f))
    return render_svg(spec)


COMMANDS = {
    "classify": cmd_classify, "cover": cmd_cover, "inner": cmd_inner,
    "measure": cmd_measure, "dimension": cmd_dimension, "boxcount": cmd_boxcount,
    "convert": cmd_convert, "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--l", type=int, help="family parameter l >= 1")
    src.add_argument("--coeffs", help="series block coefficients, comma-separated p/q")
    src.add_argument("--ifs", help="IFS JSON, or @path to a JSON file")
    common.add_argument("--ratio", help="series ratio q (with --coeffs)")
    common.add_argument("-o", "--output", help="write here instead of stdout")
    common.add_argument("--max-leaves", type=int, default=DEFAULT_MAX_LEAVES)
    common.add_argument("--precision", type=int, default=12, help="decimal places")
    common.add_argument("--tol", type=float, default=1e-12)

    parser = _Parser(prog="cantorval", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("classify", parents=[common], help="Kakeya verdict for a series")
    p = sub.add_parser("cover", parents=[common], help="outer cover at a depth")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--side", choices=["ifs", "series"], default="ifs")
    p = sub.add_parser("inner", parents=[common], help="inner approximation of K_l")
    p.add_argument("--depth", type=int, required=True)
    p = sub.add_parser("measure", parents=[common], help="cover/inner measures")
    p.add_argument("--depth", type=int, required=True)
    p = sub.add_parser("dimension", parents=[common], help="similarity and boundary dimensions")
    p.add_argument("--ratios", help="explicit contraction ratios, comma-separated")
    p = sub.add_parser("boxcount", parents=[common], help="boundary grid counts and slope")
    p.add_argument("--depths", default="6-10", help="'a-b' or comma list")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p = sub.add_parser("convert", parents=[common], help="rewrite digits over T_l")
    p.add_argument("--digits", help="comma-separated full-alphabet digits")
    p.add_argument("--point", help="rational in [(2l+1)/(2l+2), 1] to approximate")
    p.add_argument("--eps", default="1/1000000")
    p = sub.add_parser("render", parents=[common], help="SVG depth diagram")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--with-inner", action="store_true")
    p.add_argument("--width", type=int, default=1000)
    p.add_argument("--row-height", type=int, default=28)
    return parser


def _fail(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        result = COMMANDS[args.command](args)
    except UsageError as e:
        return _fail("usage", str(e), EXIT_USAGE)
    except EnumerationGuardExceeded as e:
        return _fail("guard_exceeded", str(e), EXIT_GUARD)
    except family.DigitOracleFailure as e:
        return _fail("oracle_failure", str(e), EXIT_ORACLE)
    except (ValueError, TypeError, ZeroDivisionError, KeyError, OSError) as e:
        return _fail("invalid_parameters", str(e), EXIT_USAGE)
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
