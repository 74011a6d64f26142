"""Command-line front end: ``cxradix <command> --n N ...``.

Exit codes: 0 success, 2 usage or parse error, 3 I/O error, 4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations

from .errors import CxRadixError, InvariantViolation, ParseError
from .fractal import box_dimension_CD, box_dimension_subshift
from .gaussian import Base, DigitSet, parse_gaussian
from .radix import enumerate_expansions, evaluate, expand_integer, first_divergence
from .render import RenderConfig, render
from .state_graph import build_graph, canonical_orbit_count, export_graph, pq_class_count
from .subshift import SFTSpec

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_INVARIANT = 0, 2, 3, 4


class UsageError(CxRadixError):
    pass


def _digits(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"bad digit list {text!r}") from None


def _forbid(text: str) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(d) for d in w.split("|")) for w in text.split(";") if w.strip()]
    except ValueError:
        raise ParseError(f"bad forbidden-word list {text!r}") from None


def _window(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise ParseError("window needs four comma-separated corners x0,y0,x1,y1")
    try:
        return tuple(Fraction(p.strip()) for p in parts)
    except ValueError:
        raise ParseError(f"bad window {text!r}") from None


def _emit(text: str, out) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_expand(args, out) -> int:
    base = Base(args.n)
    z = parse_gaussian(args.value)
    if z.den != 1:
        raise ParseError(f"{args.value!r} is not a Gaussian integer")
    e = expand_integer(z.num, base)
    back = evaluate(e)
    if back != z:
        raise InvariantViolation(f"{e} evaluates to {back}, not {z}")
    if args.format == "json":
        _emit(json.dumps({"n": args.n, "value": str(z), "expansions": [str(e)], "verified": True}), out)
    else:
        _emit(str(e), out)
        _emit(f"check: evaluates to {back}", out)
    return EXIT_OK


def cmd_equivalents(args, out) -> int:
    base = Base(args.n)
    z = parse_gaussian(args.value)
    exps = enumerate_expansions(z, base)
    for e in exps:
        if evaluate(e) != z:
            raise InvariantViolation(f"{e} does not evaluate to {z}")
    divergences = []
    for (i, x), (j, y) in combinations(enumerate(exps), 2):
        k, diff = first_divergence(x, y)
        if abs(diff) != 1:
            raise InvariantViolation(f"{x} and {y} first differ by {diff} at index {k}")
        divergences.append({"pair": [i, j], "index": k, "difference": diff})
    if args.format == "json":
        doc = {
            "n": args.n,
            "value": str(z),
            "expansions": [str(e) for e in exps],
            "verified": True,
            "divergences": divergences,
        }
        _emit(json.dumps(doc), out)
        return EXIT_OK
    for e in exps:
        _emit(f"{e}  = {z}  ok", out)
    for d in divergences:
        i, j = d["pair"]
        _emit(f"#{i} vs #{j}: first differ at b^{d['index']} by {d['difference']:+d}", out)
    return EXIT_OK


def cmd_state_graph(args, out) -> int:
    if args.n < 2:
        raise UsageError("state graphs need --n >= 2")
    g = build_graph(Base(args.n))
    text = export_graph(g, args.format)
    summary = (
        f"nodes: {len(g.nodes)}\nedges: {len(g.edges)}\n"
        f"orbits: {canonical_orbit_count(g)}\ndrawn_classes: {pq_class_count(g)}\n"
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        _emit(summary, out)
    else:
        _emit(text, out)
        sys.stderr.write(summary)
    return EXIT_OK


def cmd_dimension(args, out) -> int:
    base = Base(args.n)
    D = DigitSet(base, _digits(args.digits))
    if args.max_depth < 1:
        raise UsageError("--max-depth must be >= 1")
    if args.forbid:
        report = box_dimension_subshift(SFTSpec.create(base, D.digits, _forbid(args.forbid)), args.max_depth)
    else:
        report = box_dimension_CD(D, args.max_depth)
    _emit(json.dumps(report.to_json(), indent=2), out)
    return EXIT_OK


def cmd_render(args, out) -> int:
    base = Base(args.n)
    D = DigitSet(base, _digits(args.digits))
    cfg = RenderConfig(
        width=args.width,
        height=args.height,
        depth=args.depth,
        window=_window(args.window) if args.window else None,
    )
    data = render(D, cfg)
    with open(args.out, "wb") as fh:
        fh.write(data)
    _emit(f"wrote {args.out} ({cfg.width}x{cfg.height}, {len(D)}^{cfg.depth} anchors)", out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cxradix", description="Radix expansions in base -n+i.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_n(sp):
        sp.add_argument("--n", type=int, required=True, help="base is b = -n+i")
        return sp

    sp = with_n(sub.add_parser("expand", help="finite expansion of a Gaussian integer"))
    sp.add_argument("--value", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_expand)

    sp = with_n(sub.add_parser("equivalents", help="all expansions of a Gaussian rational"))
    sp.add_argument("--value", required=True)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_equivalents)

    sp = with_n(sub.add_parser("state-graph", help="export the state graph"))
    sp.add_argument("--format", choices=("dot", "json"), default="json")
    sp.add_argument("--out", help="write the graph here instead of stdout")
    sp.set_defaults(func=cmd_state_graph)

    sp = with_n(sub.add_parser("dimension", help="box-counting dimension report (JSON)"))
    sp.add_argument("--digits", required=True, help="comma-separated digit set, e.g. 0,5")
    sp.add_argument("--forbid", help="forbidden words, e.g. '5|5;0|9|0'")
    sp.add_argument("--max-depth", type=int, default=12)
    sp.set_defaults(func=cmd_dimension)

    sp = with_n(sub.add_parser("render", help="PGM image of depth-m anchors"))
    sp.add_argument("--digits", required=True)
    sp.add_argument("--depth", type=int, default=8)
    sp.add_argument("--out", required=True)
    sp.add_argument("--width", type=int, default=512)
    sp.add_argument("--height", type=int, default=512)
    sp.add_argument("--window", help="x0,y0,x1,y1 (rationals allowed, e.g. -3/2)")
    sp.set_defaults(func=cmd_render)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        sys.stderr.write(f"cxradix: invariant violation: {exc}\n")
        return EXIT_INVARIANT
    except (CxRadixError, ValueError) as exc:
        sys.stderr.write(f"cxradix: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"cxradix: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
