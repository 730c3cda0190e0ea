"""Random instances and small exhaustive families shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from reltutte.canon import canonical_key
from reltutte.graph import ColoredMultigraph, Edge, InvalidAttachment


def random_graph(rng: random.Random, *, max_vertices=5, max_regular=7, max_zero=3,
                 colors=("+", "-", "c"), min_regular=1) -> ColoredMultigraph:
    """Loops, parallels and disconnected pieces all allowed."""
    n = rng.randint(1, max_vertices)
    m = rng.randint(min_regular, max_regular)
    h = rng.randint(0, max_zero)
    palette = colors[: rng.randint(1, len(colors))]
    edges = []
    for i in range(m + h):
        u, v = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.6 and n > 1:
            while v == u:
                v = rng.randrange(n)
        color = "0" if i >= m else rng.choice(palette)
        edges.append(Edge(i, u, v, color))
    rng.shuffle(edges)
    edges = [Edge(k, e.u, e.v, e.color) for k, e in enumerate(edges)]
    return ColoredMultigraph(range(n), edges)


def random_zero_graph(rng: random.Random, *, max_vertices=6, max_edges=6) -> ColoredMultigraph:
    n = rng.randint(1, max_vertices)
    m = rng.randint(0, max_edges)
    return ColoredMultigraph(range(n), [Edge(i, rng.randrange(n), rng.randrange(n), "0") for i in range(m)])


def random_labeling(rng: random.Random, g: ColoredMultigraph, zero) -> dict:
    regular = [i for i in g.edge_ids if i not in zero]
    labs = rng.sample(range(1, 4 * len(regular) + 2), len(regular))
    out = {i: 0 for i in zero}
    out.update(zip(regular, labs))
    return out


def random_probabilities(rng: random.Random, g: ColoredMultigraph) -> dict:
    out = {}
    for i in g.edge_ids:
        den = rng.randint(1, 9)
        out[i] = Fraction(rng.randint(0, den), den)
    return out


def multigraphs_up_to(max_edges: int) -> list[ColoredMultigraph]:
    """One representative per isomorphism class of multigraphs (loops allowed)
    with at most ``max_edges`` edges and no isolated vertices, plus the
    single-vertex graph. Built by adding one edge in every possible way."""
    uncolored = lambda e: 0
    single = ColoredMultigraph([0], [])
    levels = [[single]]
    seen = {canonical_key(single, (), edge_attr=uncolored)}
    current = [ColoredMultigraph([], [])]
    for m in range(1, max_edges + 1):
        nxt = []
        for g in current:
            n = len(g.vertices)
            pairs = [(u, v) for u in range(n) for v in range(u, n)]
            pairs += [(u, n) for u in range(n)] + [(n, n), (n, n + 1)]
            for u, v in pairs:
                vs = range(max(n, v + 1))
                h = ColoredMultigraph(vs, list(g.edges) + [Edge(m - 1, u, v, "+")])
                key = canonical_key(h, (), edge_attr=uncolored)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append(h)
        levels.append(nxt)
        current = nxt
    return [g for level in levels for g in level]


def random_pivot(rng: random.Random, g: ColoredMultigraph) -> ColoredMultigraph | None:
    """A random valid vertex pivot of ``g``, or None if no cut vertex allows one."""
    cuts = [w for w in g.vertices if len(g.blocks_at(w)) >= 2]
    rng.shuffle(cuts)
    for w in cuts:
        blocks = g.blocks_at(w)
        chosen = rng.sample(blocks, rng.randint(1, len(blocks) - 1))
        side = {x for b in chosen for i in b for x in g.edge(i).ends} - {w}
        if not side:
            continue
        comp = next(c for c in g.components() if w in c)
        rest = [x for x in comp if x not in side]
        try:
            return g.vertex_pivot(w, [next(iter(b)) for b in chosen], rng.choice(sorted(side, key=str)),
                                  rng.choice(sorted(rest, key=str)))
        except InvalidAttachment:
            continue
    return None
