"""Canonical keys for colored multigraphs, used to memoize recursion results.

Connected components are canonized separately by colour refinement plus an
individualization search; the graph key is the sorted multiset of component
keys. Components above ``MAX_CANON_VERTICES`` vertices, or whose search tree
exceeds ``LEAF_BUDGET`` leaves, fall back to a literal key. Both limits depend
only on the isomorphism class, so isomorphic graphs always take the same path.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .graph import ColoredMultigraph, sort_key

__all__ = ["canonical_key", "literal_key", "MAX_CANON_VERTICES", "LEAF_BUDGET"]

MAX_CANON_VERTICES = 12
LEAF_BUDGET = 4096


class _BudgetExceeded(Exception):
    pass


def literal_key(g: ColoredMultigraph, zero: Iterable | None = None) -> tuple:
    """Exact structural key: equal only for identical graphs (ids included)."""
    H = g.zero_edges() if zero is None else frozenset(zero)
    return (
        "literal",
        g.vertices,
        tuple((e.id, e.u, e.v, e.color, e.id in H) for e in g.edges),
    )


def canonical_key(
    g: ColoredMultigraph,
    zero: Iterable | None = None,
    edge_attr: Callable | None = None,
) -> tuple:
    """Key equal for two graphs iff they are isomorphic preserving edge attributes.

    The default edge attribute is ``(color, is_zero)``.
    """
    H = g.zero_edges() if zero is None else frozenset(zero)
    if edge_attr is None:
        edge_attr = lambda e: (e.color, e.id in H)
    comps = g.components()
    if any(len(c) > MAX_CANON_VERTICES for c in comps):
        return literal_key(g, H)
    where = {}
    for ci, comp in enumerate(comps):
        for w in comp:
            where[w] = ci
    comp_edges: list[list] = [[] for _ in comps]
    for e in g.edges:
        comp_edges[where[e.u]].append(e)
    keys = []
    try:
        for comp, es in zip(comps, comp_edges):
            keys.append(_canon_connected(comp, es, edge_attr))
    except _BudgetExceeded:
        return literal_key(g, H)
    return ("canon", tuple(sorted(keys)))


def _canon_connected(vertices, edges, edge_attr) -> tuple:
    n = len(vertices)
    index = {w: i for i, w in enumerate(vertices)}
    # pair -> sorted tuple of edge attributes (multiset)
    pairs: dict[tuple[int, int], list] = {}
    for e in edges:
        i, j = index[e.u], index[e.v]
        if i > j:
            i, j = j, i
        pairs.setdefault((i, j), []).append(_attr_token(edge_attr(e)))
    pairs = {p: tuple(sorted(a)) for p, a in pairs.items()}
    nbrs: list[list[tuple[int, tuple]]] = [[] for _ in range(n)]
    loops: list[tuple] = [() for _ in range(n)]
    for (i, j), attrs in pairs.items():
        if i == j:
            loops[i] = attrs
        else:
            nbrs[i].append((j, attrs))
            nbrs[j].append((i, attrs))

    init = [(loops[i], tuple(sorted(a for _, a in nbrs[i]))) for i in range(n)]
    colors = _relabel(init)
    colors = _refine(colors, nbrs)

    best: list = [None]
    leaves = [0]

    def encode(colors: list[int]) -> tuple:
        return tuple(sorted(
            (min(colors[i], colors[j]), max(colors[i], colors[j]), attrs)
            for (i, j), attrs in pairs.items()
        ))

    def search(colors: list[int]) -> None:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            leaves[0] += 1
            if leaves[0] > LEAF_BUDGET:
                raise _BudgetExceeded
            code = encode(colors)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        for v in cells[target]:
            # individualize v: it keeps colour `target`, its cellmates move up by a half step
            trial = [2 * c + (1 if (c == target and u != v) else 0) for u, c in enumerate(colors)]
            search(_refine(_relabel(trial), nbrs))

    search(colors)
    return (n, best[0])


def _attr_token(a) -> tuple:
    if isinstance(a, tuple):
        return tuple(_attr_token(x) for x in a)
    return sort_key(a)


def _relabel(values: list) -> list[int]:
    ranks = {v: i for i, v in enumerate(sorted(set(values)))}
    return [ranks[v] for v in values]


def _refine(colors: list[int], nbrs) -> list[int]:
    ncls = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted((colors[u], a) for u, a in nbrs[v])))
            for v in range(len(colors))
        ]
        new = _relabel(sigs)
        k = len(set(new))
        if k == ncls:
            return new
        colors, ncls = new, k
