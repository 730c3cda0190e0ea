"""Paired (face graph, PD code) fixtures.

Each entry is an embedded plane graph; the PD code is its medial diagram
(see ``medial.py``). ``python tests/fixtures.py`` rewrites ``tests/data``;
``test_fixture_files_are_current`` checks the committed files still match.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from medial import genus_zero, medial_diagram
from reltutte.io import dump_graph
from reltutte.knots import format_pd

DATA = Path(__file__).parent / "data"


def _cycle(n, color, prefix="c"):
    return {f"{prefix}{i}": (i, (i + 1) % n, color) for i in range(n)}


def _parallel(u, v, colors, prefix="p"):
    return {f"{prefix}{i}": (u, v, c) for i, c in enumerate(colors)}


# name -> (vertices, edges {id: (u, v, color)}, rotation or None)
CATALOGUE: dict[str, tuple] = {
    "unknot": ([0], {}, None),
    "unlink2": ([0, 1], {}, None),
    "unlink3": ([0, 1, 2], {}, None),
    "kink_plus": ([0], {"k": (0, 0, "+")}, None),
    "kink_minus": ([0], {"k": (0, 0, "-")}, None),
    "hopf": ([0, 1], _parallel(0, 1, "++"), None),
    "trefoil": ([0, 1, 2], _cycle(3, "+"), None),
    "trefoil_mirror": ([0, 1, 2], _cycle(3, "-"), None),
    "figure_eight": ([0, 1, 2], {**_cycle(3, "+"), "c3": (0, 1, "+")}, None),
    "cinquefoil": ([0, 1, 2, 3, 4], _cycle(5, "+"), None),
    "three_twist": ([0, 1, 2, 3], {**_cycle(4, "+"), "c4": (0, 1, "+")}, None),
    "trefoil_virtual_pair": (
        [0, 1, 2],
        {"p1": (0, 1, "+"), "p2": (0, 2, "+"), "p3": (1, 2, "+"), "h1": (0, 1, "0"), "h2": (0, 1, "0")},
        {0: [("p1", 0), ("p2", 0), ("h1", 0), ("h2", 0)],
         1: [("p1", 1), ("h2", 1), ("h1", 1), ("p3", 0)],
         2: [("p2", 1), ("p3", 1)]},
    ),
    "virtual_trefoil": (
        [0, 1],
        {"h": (0, 1, "0"), "a": (0, 1, "+"), "b": (0, 1, "+")},
        {0: [("h", 0), ("a", 0), ("b", 0)], 1: [("h", 1), ("b", 1), ("a", 1)]},
    ),
    "virtual_kink": ([0], {"h": (0, 0, "0")}, None),
    "virtual_unlink2": ([0, 1], _parallel(0, 1, "00", "h"), None),
    "virtual_triangle": ([0, 1, 2], _cycle(3, "0", "h"), None),
    "trefoil_with_virtual": ([0, 1, 2], {**_cycle(3, "+"), "h": (0, 1, "0")}, None),
    "mixed_wheel": (
        [0, 1, 2, 3, 4],
        {**_cycle(4, "+"), "c1": (1, 2, "-"), "s0": (4, 0, "-"), "s1": (4, 1, "+"),
         "s2": (4, 2, "-"), "s3": (4, 3, "+")},
        None,
    ),
    "doubled_square": (
        [0, 1, 2, 3],
        {**_cycle(4, "+", "a"), **_cycle(4, "-", "b")},
        None,
    ),
    "mixed_k4_virtual": (
        [0, 1, 2, 3],
        {"a": (0, 1, "+"), "b": (1, 2, "-"), "c": (2, 0, "+"), "d": (0, 3, "-"),
         "e": (1, 3, "+"), "h1": (2, 3, "0"), "h2": (0, 0, "0"), "h3": (1, 2, "0")},
        None,
    ),
    "split_trefoil_hopf": (
        [0, 1, 2, 10, 11],
        {**_cycle(3, "+"), "q0": (10, 11, "+"), "q1": (10, 11, "-")},
        None,
    ),
    "split_virtual": (
        [0, 1, 5, 6, 7],
        {"h0": (0, 1, "0"), "a": (0, 1, "-"), "k": (5, 5, "+"), "h1": (6, 7, "0"), "h2": (6, 7, "0")},
        None,
    ),
}


def first_planar_rotation(vertices, edges) -> dict:
    """The first genus-zero rotation system in a fixed enumeration order."""
    halves = {w: [] for w in vertices}
    for k, (u, v, _) in edges.items():
        halves[u].append((k, 0))
        halves[v].append((k, 1))
    choices = []
    for w in vertices:
        hs = halves[w]
        choices.append([[hs[0], *p] for p in itertools.permutations(hs[1:])] if hs else [[]])
    for combo in itertools.product(*choices):
        rot = dict(zip(vertices, combo))
        if genus_zero(edges, rot):
            return rot
    raise ValueError("graph is not planar")


def build(name: str):
    vertices, edges, rotation = CATALOGUE[name]
    if rotation is None:
        rotation = first_planar_rotation(vertices, edges)
    return medial_diagram(edges, {w: rotation.get(w, []) for w in vertices})


def rendered(name: str) -> tuple[str, str]:
    g, diag = build(name)
    return dump_graph(g, writhe=diag.writhe), format_pd(diag)


def write_all() -> None:
    DATA.mkdir(exist_ok=True)
    for name in CATALOGUE:
        fg, pd = rendered(name)
        (DATA / f"{name}.fg").write_text(fg)
        (DATA / f"{name}.pd").write_text(pd)


if __name__ == "__main__":
    write_all()
