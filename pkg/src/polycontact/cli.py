"""Command-line front door.

Exit codes: 0 success (or "no countermodel up to the bound"), 1 a
countermodel or audit failure was found (so shells can branch on it),
2 parse error, 3 I/O error.

All reports are plain text with machine-greppable ``key=value`` lines.
``--jobs`` is accepted for interface stability; commands currently run
single-process, which keeps output deterministic for a given seed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import adjacency as adj
from . import algebra as alg
from . import cylinder as cyl
from . import intervals as iv
from . import logic as lg
from . import pipeline as pp
from . import plane as pl
from . import svg as svgmod

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_PARSE = 2
EXIT_IO = 3


class CliParseError(ValueError):
    pass


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_geometry(path: str):
    """Returns ("plane"|"cyl"|"interval", value) based on the leading keyword."""
    text = _read(path)
    head = text.strip().split(None, 1)[0] if text.strip() else ""
    try:
        if head == "poly":
            return "plane", pl.parse_plane(text)
        if head == "cyl":
            return "cyl", cyl.parse_cylinder(text)
        return "interval", iv.parse_intervals(text)
    except ValueError as exc:
        raise CliParseError(f"{path}: {exc}") from exc


def _parse_box(text: str):
    parts = [Fraction(x) for x in text.split(",")]
    if len(parts) != 4:
        raise CliParseError("viewport must be xmin,ymin,xmax,ymax")
    return tuple(parts)


def _parse_window(text: str):
    parts = [Fraction(x) for x in text.split(",")]
    if len(parts) == 2:
        return parts[0], parts[1]
    if len(parts) == 4:
        return parts[0], parts[2]
    raise CliParseError("window must be xmin,xmax")


def _bool(x: bool) -> str:
    return "true" if x else "false"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_contact(args, sc_line: bool) -> int:
    kind_a, a = _load_geometry(args.file_a)
    kind_b, b = _load_geometry(args.file_b)
    if kind_a != kind_b:
        raise CliParseError(f"operands have different kinds: {kind_a} vs {kind_b}")
    c, sc, ov = a.contact_c(b), a.contact_sc(b), a.overlap(b)
    witness = None
    if sc and sc_line:
        if kind_a == "plane":
            witness = a.sc_witness(b)
        elif kind_a == "cyl":
            witness = a.sc_witness(b)
        else:
            witness = iv.contact_witness(a, b)
    if sc_line:
        print(f"SC={_bool(sc)} C={_bool(c)} overlap={_bool(ov)}")
        if witness is not None:
            if kind_a == "plane":
                (x, y), r = witness
                print(f"witness=disk centre=({x},{y}) radius={r}")
            else:
                lo, hi = witness
                print(f"witness=interval ({lo},{hi})")
    else:
        print(f"C={_bool(c)}")
    if args.svg:
        if kind_a == "plane":
            box = _parse_box(args.viewport)
            svg = svgmod.plane_svg([(a, "A"), (b, "B")], witness=witness, box=box)
        else:
            window = _parse_window(args.viewport)
            svg = svgmod.numberline_svg([(a, "A"), (b, "B")], window=window)
        _write(args.svg, svg)
    return EXIT_OK


def _cmd_bool_op(args) -> int:
    kind_a, a = _load_geometry(args.file_a)
    if args.op == "complement":
        out = a.complement()
    else:
        if not args.file_b:
            raise CliParseError(f"{args.op} needs two operands")
        kind_b, b = _load_geometry(args.file_b)
        if kind_a != kind_b:
            raise CliParseError("operands have different kinds")
        out = a.union(b) if args.op == "union" else a.reg_meet(b)
    if kind_a == "plane":
        print(pl.format_plane(out))
    elif kind_a == "cyl":
        print(cyl.format_cylinder(out))
    else:
        print(iv.format_intervals(out))
    return EXIT_OK


_CARRIERS = {
    "interval": lambda args: alg.IntervalAlgebra(),
    "plane": lambda args: alg.PlaneAlgebra(),
    "cylinder": lambda args: alg.CylinderAlgebra(args.dim),
}


def _cmd_audit(args) -> int:
    if args.target in _CARRIERS:
        algebra = _CARRIERS[args.target](args)
    else:
        space = adj.parse_space(_read(args.target))
        algebra = alg.induced_algebra(space)
    report = alg.audit_axioms(algebra, samples=args.samples, seed=args.seed)
    connected = alg.is_connected_algebra(algebra, samples=args.samples, seed=args.seed)
    print(report.text())
    print(f"connected={_bool(connected)}")
    return EXIT_OK if report.passed else EXIT_FOUND


def _cmd_untie(args) -> int:
    space = adj.parse_space(_read(args.graph))
    untied, collapse = adj.untie(space)
    print(adj.format_space(untied))
    for src, dst in collapse.pairs:
        print(f"map {src}: {dst}")
    print(f"acyclic={_bool(adj.is_acyclic(untied))} "
          f"pmorphism={_bool(adj.check_pmorphism(collapse, untied, space))}")
    return EXIT_OK


def _cmd_project(args) -> int:
    space = adj.parse_space(_read(args.graph))
    if not adj.is_connected(space) or not adj.is_acyclic(space):
        raise CliParseError("graph must be connected and acyclic; run untie first")
    root = min(space.cells)
    walk = adj.arrangement(space, adj.numeration(space, root))
    images = adj.project(space, walk, args.dim)
    print("arrangement: " + " ".join(walk))
    for cell in space.cells:
        print(f"cell {cell}: {cyl.format_cylinder(images[cell])}")
    if args.svg:
        window = _parse_window(args.viewport)
        svg = svgmod.numberline_svg(
            [(images[c], c) for c in space.cells], window=window)
        _write(args.svg, svg)
    return EXIT_OK


def _parse_valuation(pairs: list[str]) -> dict[str, frozenset[str]]:
    out = {}
    for item in pairs:
        if "=" not in item:
            raise CliParseError(f"bad valuation {item!r}, expected name=cells")
        name, _, cells = item.partition("=")
        out[name.strip()] = frozenset(c for c in cells.replace(",", " ").split() if c)
    return out


def _cmd_eval(args) -> int:
    formula = lg.parse(args.formula)
    space = adj.parse_space(_read(args.space))
    algebra = alg.induced_algebra(space)
    if args.val:
        valuation = _parse_valuation(args.val)
        masks = {name: algebra.element_of(cells)
                 for name, cells in valuation.items()}
        print(f"result={_bool(lg.evaluate(formula, algebra, masks))}")
    else:
        print(f"true-in-space={_bool(lg.true_in_algebra(formula, algebra))}")
    scheme = lg.is_axiom_instance(formula)
    print(f"axiom-instance={scheme if scheme else 'none'}")
    return EXIT_OK


def _print_countermodel(space, valuation) -> None:
    print(adj.format_space(space))
    for name in sorted(valuation):
        print(f"val {name}: " + " ".join(sorted(valuation[name])))


def _cmd_countermodel(args) -> int:
    if args.file:
        # one formula per line, '#' comments; exit 1 when any line fails
        formulas = lg.parse_formula_file(_read(args.file))
        any_found = False
        for lineno, formula in formulas:
            found = lg.find_countermodel(formula, args.bound)
            if found is None:
                print(f"line {lineno}: none")
            else:
                any_found = True
                print(f"line {lineno}: countermodel")
                _print_countermodel(*found)
        return EXIT_FOUND if any_found else EXIT_OK
    if not args.formula:
        raise CliParseError("countermodel needs a formula or --file")
    found = lg.find_countermodel(lg.parse(args.formula), args.bound)
    if found is None:
        print("none")
        return EXIT_OK
    _print_countermodel(*found)
    return EXIT_FOUND


def _cmd_synthesize(args) -> int:
    cert = pp.synthesize(args.formula, args.bound, args.dim)
    if cert is None:
        print("none")
        return EXIT_OK
    text = pp.serialize_certificate(cert)
    if args.out:
        _write(args.out, text)
        print(f"certificate written to {args.out}")
    else:
        print(text, end="")
    report = pp.verify(cert)
    print(f"verified={_bool(report.passed)}")
    if args.svg:
        window = _parse_window(args.viewport)
        items = [(cert.geometric_valuation[name], name)
                 for name in sorted(cert.geometric_valuation)]
        _write(args.svg, svgmod.numberline_svg(items, window=window))
    return EXIT_FOUND


def _cmd_render(args) -> int:
    text = _read(args.file)
    head = text.strip().split(None, 1)[0] if text.strip() else ""
    if head == "certificate":
        cert = pp.parse_certificate(text)
        items = [(cert.geometric_valuation[name], name)
                 for name in sorted(cert.geometric_valuation)]
        svg = svgmod.numberline_svg(items, window=_parse_window(args.viewport))
    elif head == "poly":
        poly = pl.parse_plane(text)
        svg = svgmod.plane_svg([(poly, "")], box=_parse_box(args.viewport))
    elif head == "cyl":
        c = cyl.parse_cylinder(text)
        svg = svgmod.numberline_svg([(c, "")], window=_parse_window(args.viewport))
    else:
        p = iv.parse_intervals(text)
        svg = svgmod.numberline_svg([(p, "")], window=_parse_window(args.viewport))
    _write(args.svg, svg)
    print(f"svg written to {args.svg}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycontact",
        description="strong contact between polytopes, contact-algebra audits, "
                    "and countermodel synthesis")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes (reserved; runs single-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_svg(p, plane_default="-6,-6,6,6"):
        p.add_argument("--svg", help="write an SVG rendering to this path")
        p.add_argument("--viewport", default=plane_default,
                       help="clipping box xmin,ymin,xmax,ymax (or xmin,xmax)")

    p = sub.add_parser("sc-check", help="strong contact of two regions")
    p.add_argument("file_a")
    p.add_argument("file_b")
    add_svg(p)
    p.set_defaults(fn=lambda a: _cmd_contact(a, sc_line=True))

    p = sub.add_parser("c-check", help="topological contact of two regions")
    p.add_argument("file_a")
    p.add_argument("file_b")
    add_svg(p)
    p.set_defaults(fn=lambda a: _cmd_contact(a, sc_line=False))

    p = sub.add_parser("bool-op", help="union / meet / complement")
    p.add_argument("op", choices=["union", "meet", "complement"])
    p.add_argument("file_a")
    p.add_argument("file_b", nargs="?")
    p.set_defaults(fn=_cmd_bool_op)

    p = sub.add_parser("audit", help="contact-algebra axiom audit")
    p.add_argument("target",
                   help="graph file, or one of: interval, plane, cylinder")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.set_defaults(fn=_cmd_audit)

    p = sub.add_parser("untie", help="acyclic p-morphic preimage of a graph")
    p.add_argument("graph")
    p.set_defaults(fn=_cmd_untie)

    p = sub.add_parser("project", help="project an acyclic graph onto cylinders")
    p.add_argument("graph")
    p.add_argument("--dim", type=int, default=1)
    add_svg(p, plane_default="-2,14")
    p.set_defaults(fn=_cmd_project)

    p = sub.add_parser("eval", help="evaluate a formula in a graph's algebra")
    p.add_argument("formula")
    p.add_argument("space", help="graph file")
    p.add_argument("--val", action="append", default=[],
                   help="variable assignment name=cell,cell (repeatable)")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("countermodel", help="search for a discrete countermodel")
    p.add_argument("formula", nargs="?",
                   help="formula text (or use --file)")
    p.add_argument("--file", help="file with one formula per line, '#' comments")
    p.add_argument("--bound", type=int, default=4)
    p.set_defaults(fn=_cmd_countermodel)

    p = sub.add_parser("synthesize", help="full geometric countermodel certificate")
    p.add_argument("formula")
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--out", help="write the certificate to this path")
    add_svg(p, plane_default="-2,14")
    p.set_defaults(fn=_cmd_synthesize)

    p = sub.add_parser("render", help="render a region or certificate to SVG")
    p.add_argument("file")
    p.add_argument("--svg", required=True)
    p.add_argument("--viewport", default="-6,-6,6,6")
    p.set_defaults(fn=_cmd_render)

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.fn(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (CliParseError, lg.FormulaSyntaxError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
