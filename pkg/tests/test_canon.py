import itertools
import random

import networkx as nx

from helpers import multigraphs_up_to, random_graph
from reltutte.canon import MAX_CANON_VERTICES, canonical_key, literal_key
from reltutte.graph import ColoredMultigraph, Edge


def to_nx(g):
    m = nx.MultiGraph()
    m.add_nodes_from(g.vertices)
    for e in g.edges:
        m.add_edge(e.u, e.v, color=e.color)
    return m


def _same_color_multiset(a, b):
    # networkx's categorical multiedge matcher compares sets, so parallel
    # edges would lose their multiplicities
    return sorted(d["color"] for d in a.values()) == sorted(d["color"] for d in b.values())


def nx_iso(g, h):
    return nx.is_isomorphic(to_nx(g), to_nx(h), edge_match=_same_color_multiset)


def test_class_counts_match_known_sequence():
    # multigraphs with loops, no isolated vertices, counted by edges (OEIS A050535)
    counts = [0] * 6
    for g in multigraphs_up_to(5):
        counts[len(g)] += 1
    assert counts == [1, 2, 7, 23, 79, 274]


def test_keys_decide_isomorphism_exhaustively():
    checked = 0
    for base in multigraphs_up_to(5):
        ids = base.edge_ids
        colorings = [ColoredMultigraph(base.vertices, [Edge(e.id, e.u, e.v, c) for e, c in zip(base.edges, cs)])
                     for cs in itertools.product("+0", repeat=len(ids))]
        keys = [canonical_key(g) for g in colorings]
        reps: dict = {}
        for g, k in zip(colorings, keys):
            reps.setdefault(k, g)
            assert nx_iso(g, reps[k])
        for a, b in itertools.combinations(reps.values(), 2):
            assert not nx_iso(a, b)
        checked += len(colorings)
    assert checked > 5000


def test_keys_ignore_vertex_and_edge_names():
    rng = random.Random(8)
    for _ in range(300):
        g = random_graph(rng, max_vertices=7, max_regular=8)
        perm = list(g.vertices)
        rng.shuffle(perm)
        vmap = dict(zip(g.vertices, [f"v{p}" for p in perm]))
        eids = [f"e{k}" for k in rng.sample(range(100), len(g))]
        h = ColoredMultigraph(vmap.values(), [Edge(eid, vmap[e.u], vmap[e.v], e.color)
                                              for eid, e in zip(eids, g.edges)])
        zero_h = {eid for eid, e in zip(eids, g.edges) if e.id in g.zero_edges()}
        assert canonical_key(g) == canonical_key(h, zero_h)


def test_zero_set_is_part_of_the_key():
    g = ColoredMultigraph([0, 1], [Edge(1, 0, 1, "+"), Edge(2, 0, 1, "+")])
    assert canonical_key(g, {1}) == canonical_key(g, {2})
    assert canonical_key(g, {1}) != canonical_key(g, ())


def test_large_components_fall_back_to_literal_keys():
    n = MAX_CANON_VERTICES + 1
    path = ColoredMultigraph(range(n), [Edge(i, i, i + 1) for i in range(n - 1)])
    rev = ColoredMultigraph(range(n), [Edge(i, n - 1 - i, n - 2 - i) for i in range(n - 1)])
    k1, k2 = canonical_key(path), canonical_key(rev)
    assert k1 != k2 and k1 == canonical_key(path)
    assert literal_key(path) != literal_key(rev)
