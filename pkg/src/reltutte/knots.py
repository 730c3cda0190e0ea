"""Kauffman bracket and Jones polynomial of virtual links.

Two independent routes:

* :func:`bracket_from_face_graph` evaluates the relative Tutte polynomial of a
  signed face graph (virtual crossings as zero edges) and substitutes the
  bracket weights;
* :func:`state_sum_bracket` sums over all smoothings of a PD-coded diagram,
  counting loops with union-find and passing straight through virtual
  crossings.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from .dc import relative_tutte_dc
from .graph import ZERO, ColoredMultigraph, DisjointSet
from .poly import A, Q, ZERO as POLY_ZERO, MultiPoly, Var, format_terms
from .psi import psi_knot

__all__ = [
    "MalformedDiagram",
    "BadColor",
    "Crossing",
    "VirtualDiagram",
    "FaceGraph",
    "KNOT_SUBSTITUTION",
    "bracket_from_face_graph",
    "jones_from_bracket",
    "format_jones",
    "state_sum_bracket",
    "component_count",
    "parse_pd",
    "format_pd",
    "relative_tutte_of_face_graph",
]


class MalformedDiagram(ValueError):
    pass


class BadColor(ValueError):
    pass


D_VALUE = -(A ** 2 + A ** -2)

KNOT_SUBSTITUTION: dict[Var, MultiPoly] = {
    Var("X", "+"): -(A ** -3),
    Var("X", "-"): -(A ** 3),
    Var("Y", "+"): -(A ** 3),
    Var("Y", "-"): -(A ** -3),
    Var("x", "+"): A,
    Var("x", "-"): A ** -1,
    Var("y", "+"): A ** -1,
    Var("y", "-"): A,
    Var("d"): D_VALUE,
}


@dataclass(frozen=True)
class Crossing:
    """Four arc ids counterclockwise.

    Classical crossings start at the incoming under-strand, so the
    under-strand is ``arcs[0]-arcs[2]`` and the over-strand ``arcs[1]-arcs[3]``;
    ``sign`` is +1/-1 for the writhe. Virtual crossings have ``sign=None``.
    """

    arcs: tuple[int, int, int, int]
    sign: int | None = None

    @property
    def virtual(self) -> bool:
        return self.sign is None


@dataclass(frozen=True)
class VirtualDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: tuple[int, ...] = ()

    def __post_init__(self):
        counts = Counter(a for c in self.crossings for a in c.arcs)
        for a in self.free_loops:
            if a in counts:
                raise MalformedDiagram(f"free loop arc {a} also appears at a crossing")
            counts[a] += 2
        bad = sorted(a for a, k in counts.items() if k != 2)
        if bad:
            raise MalformedDiagram(f"arcs {bad} do not occur exactly twice")
        for c in self.crossings:
            if len(c.arcs) != 4:
                raise MalformedDiagram(f"crossing {c.arcs} does not have four arcs")
            if c.sign not in (None, 1, -1):
                raise MalformedDiagram(f"bad sign {c.sign!r}")

    @property
    def arcs(self) -> list[int]:
        return sorted({a for c in self.crossings for a in c.arcs} | set(self.free_loops))

    @property
    def classical(self) -> list[Crossing]:
        return [c for c in self.crossings if not c.virtual]

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.classical)


@dataclass(frozen=True)
class FaceGraph:
    graph: ColoredMultigraph
    writhe: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        bad = sorted({e.color for e in self.graph.edges} - {"+", "-", ZERO})
        if bad:
            raise BadColor(f"face graph edge colors must be +, - or 0; got {bad}")


def _loops(arcs: list[int], pairings: Iterable[tuple[int, int]]) -> int:
    ds = DisjointSet(arcs)
    for a, b in pairings:
        ds.union(a, b)
    return ds.count


def component_count(diag: VirtualDiagram) -> int:
    """Closed components: every crossing passes both strands straight through."""
    pairs = []
    for c in diag.crossings:
        a, b, cc, d = c.arcs
        pairs += [(a, cc), (b, d)]
    return _loops(diag.arcs, pairs)


def _state_counts(diag: VirtualDiagram, start: int, stop: int) -> Counter:
    arcs = diag.arcs
    fixed = []
    for c in diag.crossings:
        if c.virtual:
            a, b, cc, d = c.arcs
            fixed += [(a, cc), (b, d)]
    classical = [c.arcs for c in diag.classical]
    n = len(classical)
    out: Counter = Counter()
    for state in range(start, stop):
        pairs = list(fixed)
        n_a = 0
        for k, (a, b, cc, d) in enumerate(classical):
            if state >> k & 1:
                pairs += [(a, d), (b, cc)]  # B-smoothing
            else:
                pairs += [(a, b), (cc, d)]  # A-smoothing
                n_a += 1
        out[(2 * n_a - n, _loops(arcs, pairs))] += 1
    return out


def state_sum_bracket(diag: VirtualDiagram, threads: int = 1) -> MultiPoly:
    """Sum of A^(#A - #B) d^(loops - 1) over all smoothings, d = -A^2 - A^-2."""
    total_states = 1 << len(diag.classical)
    if threads > 1 and total_states >= 64:
        step = -(-total_states // threads)
        ranges = [(diag, s, min(s + step, total_states)) for s in range(0, total_states, step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            counts = sum(pool.map(_state_counts_job, ranges), Counter())
    else:
        counts = _state_counts(diag, 0, total_states)
    out = POLY_ZERO
    for (ea, loops), k in sorted(counts.items()):
        out = out + k * (A ** ea) * (D_VALUE ** (loops - 1))
    return out


def _state_counts_job(job) -> Counter:
    return _state_counts(*job)


def bracket_from_face_graph(fg: FaceGraph) -> MultiPoly:
    g = fg.graph
    t = relative_tutte_dc(g, psi_knot, zero=g.zero_edges())
    return t.substitute(KNOT_SUBSTITUTION)


def relative_tutte_of_face_graph(fg: FaceGraph) -> MultiPoly:
    return relative_tutte_dc(fg.graph, psi_knot, zero=fg.graph.zero_edges())


def jones_from_bracket(bracket: MultiPoly, writhe: int) -> MultiPoly:
    """(-A^-3)^writhe * bracket, rewritten in q = t^(1/4) via A = q^-1."""
    normalized = (-(A ** -3)) ** writhe * bracket
    return normalized.substitute({Var("A"): Q ** -1})


def format_jones(j: MultiPoly) -> tuple[str, bool]:
    """Text of a Jones polynomial in ascending powers: in t when every q
    exponent is a multiple of 4, else in q.

    Returns ``(text, in_t)``.
    """
    q = Var("q")
    extra = j.variables() - {q}
    if extra:
        raise ValueError(f"not a polynomial in q: {j}")
    terms = sorted(j.items(), key=lambda t: dict(t[0]).get(q, 0))
    if all(e % 4 == 0 for e in j.exponents(q)):
        name = lambda v, e: "t" if e == 4 else f"t^{e // 4}"
        return format_terms(terms, name), True
    return format_terms(terms), False


# -- PD text format ----------------------------------------------------------

def parse_pd(text: str, source: str = "<pd>") -> VirtualDiagram:
    """``X a b c d +|-`` for classical crossings, ``V a b c d`` virtual, ``O a`` free loop."""
    crossings = []
    loops = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0].upper()
        try:
            if kind == "X":
                if len(parts) != 6 or parts[5] not in ("+", "-", "−"):
                    raise ValueError("expected 'X a b c d sign'")
                arcs = tuple(int(p) for p in parts[1:5])
                crossings.append(Crossing(arcs, 1 if parts[5] == "+" else -1))
            elif kind == "V":
                if len(parts) != 5:
                    raise ValueError("expected 'V a b c d'")
                crossings.append(Crossing(tuple(int(p) for p in parts[1:5])))
            elif kind == "O":
                if len(parts) != 2:
                    raise ValueError("expected 'O a'")
                loops.append(int(parts[1]))
            else:
                raise ValueError(f"unknown record {parts[0]!r}")
        except ValueError as exc:
            raise MalformedDiagram(f"{source}:{lineno}: {exc}") from None
    try:
        return VirtualDiagram(tuple(crossings), tuple(loops))
    except MalformedDiagram as exc:
        raise MalformedDiagram(f"{source}: {exc}") from None


def format_pd(diag: VirtualDiagram) -> str:
    lines = []
    for c in diag.crossings:
        arcs = " ".join(map(str, c.arcs))
        if c.virtual:
            lines.append(f"V {arcs}")
        else:
            lines.append(f"X {arcs} {'+' if c.sign > 0 else '-'}")
    lines += [f"O {a}" for a in diag.free_loops]
    return "\n".join(lines) + "\n"
