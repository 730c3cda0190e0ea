"""Command-line front end: ``reltutte <command> ...``.

Exit status 0 on success, 1 for bad input, 2 when an internal consistency
check fails. Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .expansion import ExpansionPlan
from .graph import ColoredMultigraph, GraphError
from .io import InputError, load_face_graph, load_graph, load_pd
from .knots import (
    BadColor,
    MalformedDiagram,
    bracket_from_face_graph,
    component_count,
    format_jones,
    jones_from_bracket,
    state_sum_bracket,
)
from .poly import NonInvertibleSubstitution, PolyParseError, localize
from .psi import NotPowerOfTwo, PSI_REGISTRY, get_psi, zero_order
from .dc import relative_tutte_dc
from .specializations import (
    ClusterInstance,
    PointedInstance,
    random_cluster_Z,
    set_pointed_direct,
    set_pointed_via_relative,
)

__all__ = ["main", "build_parser", "selftest_checks"]


class _Usage(Exception):
    """Bad command-line value (exit 1)."""


def _resolve_ids(g: ColoredMultigraph, text: str, what: str) -> list:
    by_name = {str(i): i for i in g.edge_ids}
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok not in by_name:
            raise _Usage(f"{what}: no edge with id {tok!r}")
        out.append(by_name[tok])
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# -- commands -----------------------------------------------------------------

def cmd_tutte(args) -> int:
    g = load_graph(args.graph)
    if args.zero_edges == "from-color":
        zero = g.zero_edges()
    else:
        zero = frozenset(_resolve_ids(g, args.zero_edges, "--zero-edges"))
    psi = get_psi(args.psi)
    if args.method == "expansion":
        t = ExpansionPlan(g, psi, zero).evaluate(threads=args.threads)
        if args.localized:
            t = localize(t)
    else:
        t = relative_tutte_dc(g, psi, zero=zero, localized=args.localized)
    _emit(args, {"command": "tutte", "psi": psi.name, "localized": args.localized,
                 "zero_edges": sorted(map(str, zero)), "result": t.to_str()}, t.to_str())
    return 0


def cmd_bracket(args) -> int:
    fg = load_face_graph(args.face_graph)
    b = bracket_from_face_graph(fg)
    _emit(args, {"command": "bracket", "result": b.to_str()}, b.to_str())
    return 0


def cmd_jones(args) -> int:
    fg = load_face_graph(args.face_graph, writhe=args.writhe)
    j = jones_from_bracket(bracket_from_face_graph(fg), fg.writhe)
    text, in_t = format_jones(j)
    if not in_t:
        print("note: fractional powers of t; printed in q = t^(1/4)", file=sys.stderr)
    _emit(args, {"command": "jones", "writhe": fg.writhe, "variable": "t" if in_t else "q",
                 "result": text}, text)
    return 0


def cmd_oracle(args) -> int:
    diag = load_pd(args.pd)
    b = state_sum_bracket(diag, threads=args.threads)
    _emit(args, {"command": "oracle", "components": component_count(diag),
                 "writhe": diag.writhe, "result": b.to_str()}, b.to_str())
    return 0


def cmd_zero_order(args) -> int:
    g = load_graph(args.graph)
    n = zero_order(g)
    _emit(args, {"command": "zero-order", "result": n}, str(n))
    return 0


def cmd_pointed(args) -> int:
    g = load_graph(args.graph)
    inst = PointedInstance(g, frozenset(_resolve_ids(g, args.pointed_set, "--pointed-set")))
    via = set_pointed_via_relative(inst)
    if args.check:
        direct = set_pointed_direct(inst)
        if direct != via:
            raise AssertionError(f"set-pointed mismatch: direct {direct} vs relative {via}")
    _emit(args, {"command": "pointed", "pointed_set": sorted(map(str, inst.pointed)),
                 "result": via.to_str()}, via.to_str())
    return 0


def _parse_probabilities(g: ColoredMultigraph, text: str) -> dict:
    try:
        if "=" not in text:
            return {i: Fraction(text) for i in g.edge_ids}
        by_name = {str(i): i for i in g.edge_ids}
        out = {}
        for tok in filter(None, (t.strip() for t in text.split(","))):
            name, _, val = tok.partition("=")
            if name.strip() not in by_name:
                raise _Usage(f"--p: no edge with id {name.strip()!r}")
            out[by_name[name.strip()]] = Fraction(val.strip())
        return out
    except (ValueError, ZeroDivisionError) as exc:
        raise _Usage(f"--p: {exc}") from None


def cmd_cluster(args) -> int:
    g = load_graph(args.graph)
    inst = ClusterInstance(g, _parse_probabilities(g, args.p))
    z = random_cluster_Z(inst)
    _emit(args, {"command": "cluster", "result": z.to_str()}, z.to_str())
    return 0


def selftest_checks() -> list[tuple[str, Callable[[], bool]]]:
    """Known worked examples, each as (description, check)."""
    from .expansion import relative_tutte_expansion
    from .graph import Edge
    from .knots import FaceGraph
    from .poly import A, D, PZ, Var, parse_poly, x_, X_, y_, Y_, XLOC, YLOC
    from .psi import psi_knot, psi_rank_z

    pair = ColoredMultigraph([0, 1, 2], [
        Edge("h1", 0, 1, "0"), Edge("h2", 0, 1, "0"),
        Edge("p1", 0, 1, "+"), Edge("p2", 0, 2, "+"), Edge("p3", 1, 2, "+"),
    ])
    fg = FaceGraph(pair, writhe=3)
    bracket = parse_poly("-A^-3 + A^-7 - A^5")
    p = "+"
    display = (y_(p) ** 2 * (X_(p) + x_(p)) * D
               + (x_(p) * y_(p) * X_(p) + x_(p) ** 2 * y_(p) + x_(p) ** 2 * Y_(p)))

    tri = ColoredMultigraph([0, 1, 2], [
        Edge("e", 0, 1, "lambda"), Edge("f", 1, 2, "mu"), Edge("h", 2, 0, "0"),
    ])
    l, m = "lambda", "mu"
    first = x_(l) * x_(m) + (X_(l) * y_(m) + x_(m) * y_(l)) * PZ
    second = x_(l) * x_(m) + (x_(l) * y_(m) + X_(m) * y_(l)) * PZ
    exp1 = relative_tutte_expansion(tri, psi_rank_z, labels={"e": 1, "f": 2, "h": 0})
    exp2 = relative_tutte_expansion(tri, psi_rank_z, labels={"e": 2, "f": 1, "h": 0})

    return [
        ("bracket of the trefoil with two virtual crossings",
         lambda: bracket_from_face_graph(fg) == bracket),
        ("its Jones polynomial at writhe 3 is t + t^3 - t^4",
         lambda: format_jones(jones_from_bracket(bracket_from_face_graph(fg), 3)) == ("t + t^3 - t^4", True)),
        ("its relative Tutte polynomial before substitution",
         lambda: relative_tutte_dc(pair, psi_knot) == display),
        ("triangle expansion, first labeling", lambda: exp1 == first),
        ("triangle expansion, second labeling", lambda: exp2 == second),
        ("the two labelings agree after localization", lambda: localize(exp1) == localize(exp2)),
        ("X[+] -> -A^-3", lambda: X_("+").substitute({Var("X", "+"): -(A ** -3)}) == -(A ** -3)),
        ("d -> -(A^2 + A^-2)", lambda: D.substitute({Var("d"): -(A ** 2 + A ** -2)}) == -(A ** 2) - A ** -2),
        ("localized X", lambda: localize(X_(l)) == x_(l) + XLOC * y_(l)),
        ("localized Y", lambda: localize(Y_(l)) == y_(l) + YLOC * x_(l)),
        ("single + loop gives Y[+]", lambda: relative_tutte_dc(
            ColoredMultigraph([0], [Edge(1, 0, 0, "+")]), get_psi("one")) == Y_("+")),
        ("single + bridge gives X[+]", lambda: relative_tutte_dc(
            ColoredMultigraph([0, 1], [Edge(1, 0, 1, "+")]), get_psi("one")) == X_("+")),
    ]


def cmd_selftest(args) -> int:
    failed = 0
    results = []
    for name, check in selftest_checks():
        ok = bool(check())
        failed += not ok
        results.append({"check": name, "ok": ok})
        if not args.json:
            print(f"{'PASS' if ok else 'FAIL'}  {name}")
    if args.json:
        print(json.dumps({"command": "selftest", "results": results, "failed": failed}, sort_keys=True))
    return 2 if failed else 0


# -- plumbing -----------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; bad usage is an input error here
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("--threads", type=_positive_int, default=1, metavar="N",
                        help="worker processes for subset/state sums (default 1)")

    parser = _Parser(prog="reltutte", description="Relative Tutte polynomials and virtual-link brackets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tutte", parents=[common], help="relative Tutte polynomial of a graph file")
    p.add_argument("--graph", required=True, help="YAML/JSON graph file")
    p.add_argument("--zero-edges", default="from-color",
                   help="'from-color' (edges colored \"0\") or a comma-separated edge id list")
    p.add_argument("--psi", default="one", choices=sorted(PSI_REGISTRY),
                   help="invariant applied to each residual zero-edge graph (default one)")
    p.add_argument("--localized", action="store_true",
                   help="print in the labeling-independent Xloc/Yloc form")
    p.add_argument("--method", choices=("dc", "expansion"), default="dc",
                   help="deletion-contraction or the contracting-set expansion")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("bracket", parents=[common], help="Kauffman bracket from a face graph")
    p.add_argument("--face-graph", required=True, help="graph file with colors +, - and 0")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jones", parents=[common], help="Jones polynomial from a face graph")
    p.add_argument("--face-graph", required=True, help="graph file with colors +, - and 0")
    p.add_argument("--writhe", type=int, default=None, help="overrides the file's writhe field")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("oracle", parents=[common], help="state-sum bracket of a PD file")
    p.add_argument("--pd", required=True, help="PD code file")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("zero-order", parents=[common], help="link components of the all-virtual diagram")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_zero_order)

    p = sub.add_parser("pointed", parents=[common], help="set-pointed Tutte polynomial in x, y, z")
    p.add_argument("--graph", required=True)
    p.add_argument("--pointed-set", default="", help="comma-separated edge ids")
    p.add_argument("--check", action="store_true", help="also run the direct subset sum and compare")
    p.set_defaults(func=cmd_pointed)

    p = sub.add_parser("cluster", parents=[common], help="random-cluster generating function in kappa")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", required=True, help="one probability for all edges, or id=p,id=p,...")
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("selftest", parents=[common], help="rerun the built-in worked examples")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, _Usage, GraphError, MalformedDiagram, BadColor, PolyParseError) as exc:
        print(f"reltutte {args.command}: {exc}", file=sys.stderr)
        return 1
    except (AssertionError, NotPowerOfTwo, NonInvertibleSubstitution) as exc:
        print(f"reltutte {args.command}: internal check failed: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
