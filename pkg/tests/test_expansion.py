import random

import pytest

from helpers import random_graph, random_labeling
from reltutte.dc import EdgeWeights, ordinary_tutte
from reltutte.expansion import (
    Activity, ExpansionPlan, default_labeling, edge_weight, external_activity, internal_activity,
    relative_tutte_expansion, validate_labeling,
)
from reltutte.graph import BadLabeling, BadPartition, ColoredMultigraph, ContractingSplit, Edge
from reltutte.poly import ONE, PX, PY, PZ, X_, Y_, localize, x_, y_
from reltutte.psi import psi_alpha, psi_knot, psi_one, psi_rank_z

TRI = ColoredMultigraph([0, 1, 2], [Edge("e", 0, 1, "lambda"), Edge("f", 1, 2, "mu"), Edge("h", 2, 0, "0")])
L12 = {"e": 1, "f": 2, "h": 0}
L21 = {"e": 2, "f": 1, "h": 0}


def split(g, C, H=("h",)):
    C, H = frozenset(C), frozenset(H)
    return ContractingSplit(C, frozenset(g.edge_ids) - C - H, H)


def test_triangle_activities():
    assert internal_activity(TRI, split(TRI, {"e"}), L12, "e") is Activity.INTERNALLY_ACTIVE
    both = split(TRI, {"e", "f"})
    assert internal_activity(TRI, both, L12, "e") is Activity.INTERNALLY_INACTIVE
    assert internal_activity(TRI, both, L12, "f") is Activity.INTERNALLY_INACTIVE
    assert external_activity(TRI, split(TRI, {"e"}), L12, "f") is Activity.EXTERNALLY_INACTIVE
    assert external_activity(TRI, split(TRI, {"f"}), L12, "e") is Activity.EXTERNALLY_INACTIVE


def test_bridges_and_loops_are_always_active():
    g = ColoredMultigraph([0, 1, 2], [Edge(1, 0, 1, "+"), Edge(2, 1, 2, "+"), Edge(3, 2, 1, "+"),
                                      Edge(4, 2, 2, "-")])
    rng = random.Random(0)
    for s in g.enumerate_contracting_sets(()):
        for _ in range(5):
            labels = random_labeling(rng, g, ())
            assert internal_activity(g, s, labels, 1) is Activity.INTERNALLY_ACTIVE
            assert external_activity(g, s, labels, 4) is Activity.EXTERNALLY_ACTIVE


def test_weight_table():
    g = ColoredMultigraph([0, 1], [Edge(1, 0, 1, "+"), Edge(2, 0, 1, "-"), Edge(3, 1, 1, "c")])
    labels = {1: 1, 2: 2, 3: 3}
    s = split(g, {1}, ())
    assert edge_weight(g, s, labels, 1) == X_("+")
    assert edge_weight(g, s, labels, 2) == y_("-")
    assert edge_weight(g, s, labels, 3) == Y_("c")
    assert edge_weight(g, split(g, {2}, ()), labels, 2) == x_("-")
    assert edge_weight(g, split(g, {2}, ()), {1: 2, 2: 1, 3: 3}, 2) == X_("-")
    with pytest.raises(BadPartition):
        edge_weight(TRI, split(TRI, {"e"}), L12, "h")
    with pytest.raises(BadPartition):
        internal_activity(TRI, split(TRI, {"e"}), L12, "f")


def test_labeling_validation():
    validate_labeling(TRI, {"h"}, L12)
    for bad in ({"e": 1, "f": 1, "h": 0}, {"e": 1, "f": 2, "h": 3}, {"e": 0, "f": 2, "h": 0}, {"e": 1, "h": 0}):
        with pytest.raises(BadLabeling):
            validate_labeling(TRI, {"h"}, bad)
    assert default_labeling(TRI) == L12


def test_triangle_expansions_verbatim():
    l, m = "lambda", "mu"
    # with psi = z^rank the two residues (zero loop, zero bridge) give 1 and z
    first = relative_tutte_expansion(TRI, psi_rank_z, labels=L12)
    second = relative_tutte_expansion(TRI, psi_rank_z, labels=L21)
    assert first == x_(l) * x_(m) + (X_(l) * y_(m) + x_(m) * y_(l)) * PZ
    assert second == x_(l) * x_(m) + (x_(l) * y_(m) + X_(m) * y_(l)) * PZ
    assert first != second
    assert localize(first) == localize(second)


def test_activity_formulations_agree():
    rng = random.Random(12)
    for _ in range(60):
        g = random_graph(rng, max_vertices=5, max_regular=6, max_zero=3)
        H = g.zero_edges()
        for s in g.enumerate_contracting_sets():
            labels = random_labeling(rng, g, H)
            for e in s.contracting:
                assert internal_activity(g, s, labels, e) == internal_activity(g, s, labels, e, method="cocycle")
            for f in s.deleting:
                assert external_activity(g, s, labels, f) == external_activity(g, s, labels, f, method="cycle")


def classical(color):
    return EdgeWeights(PX, PY, ONE, ONE)


def test_reduces_to_ordinary_tutte():
    rng = random.Random(13)
    for _ in range(40):
        g = random_graph(rng, max_vertices=5, max_regular=7, max_zero=0, colors=("+",))
        t = ExpansionPlan(g, psi_one, ()).evaluate(weights=classical)
        assert t == ordinary_tutte(g)


def test_labeling_independence_after_localization():
    rng = random.Random(14)
    for _ in range(15):
        g = random_graph(rng)
        plan = ExpansionPlan(g, psi_knot)
        ref = localize(plan.evaluate())
        for _ in range(5):
            assert localize(plan.evaluate(random_labeling(rng, g, plan.zero))) == ref


def test_parallel_evaluation_matches_serial():
    rng = random.Random(15)
    g = random_graph(rng, max_regular=7, min_regular=6, max_zero=2)
    plan = ExpansionPlan(g, psi_alpha)
    assert plan.evaluate(threads=3) == plan.evaluate()
    assert relative_tutte_expansion(g, psi_alpha, threads=2) == plan.evaluate()


def test_terms_expose_each_contracting_set():
    terms = ExpansionPlan(TRI, psi_rank_z).terms(L12)
    assert [sorted(s.contracting) for s, _, _ in terms] == [["e"], ["f"], ["e", "f"]]
    assert [str(w) for _, w, _ in terms] == ["X[lambda]*y[mu]", "x[mu]*y[lambda]", "x[lambda]*x[mu]"]
    assert [str(p) for _, _, p in terms] == ["z", "z", "1"]
