"""Set-pointed Tutte polynomial and the random-cluster generating function.

Both come with a direct subset sum, so the relative-Tutte route can be
checked against an independent computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .dc import relative_tutte_dc
from .graph import ColoredMultigraph, GraphError, iter_subsets, sort_key
from .poly import KAPPA, ONE, PX, PY, PZ, ZERO, MultiPoly, Var
from .psi import psi_rank_z

__all__ = [
    "PointedInstance",
    "ClusterInstance",
    "set_pointed_direct",
    "set_pointed_via_relative",
    "random_cluster_Z",
    "POINTED_COLOR",
]

# the single regular colour used for edges outside the pointed set
POINTED_COLOR = "free"


@dataclass(frozen=True)
class PointedInstance:
    graph: ColoredMultigraph
    pointed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        A = frozenset(self.pointed)
        object.__setattr__(self, "pointed", A)
        missing = sorted(A - set(self.graph.edge_ids), key=sort_key)
        if missing:
            raise GraphError(f"pointed set names unknown edges {missing}")


@dataclass(frozen=True)
class ClusterInstance:
    """Survival probability ``p[e]`` per edge; ``1 - p[e]`` is derived on use."""

    graph: ColoredMultigraph
    p: Mapping

    def __post_init__(self):
        probs = {}
        for eid in self.graph.edge_ids:
            if eid not in self.p:
                raise GraphError(f"edge {eid!r} has no probability")
            v = Fraction(self.p[eid])
            if not 0 <= v <= 1:
                raise GraphError(f"probability of edge {eid!r} is {v}, outside [0, 1]")
            probs[eid] = v
        extra = set(self.p) - set(probs)
        if extra:
            raise GraphError(f"probabilities given for unknown edges {sorted(extra, key=sort_key)}")
        object.__setattr__(self, "p", probs)


def set_pointed_direct(inst: PointedInstance) -> MultiPoly:
    """Sum over X within E - A of (x-1)^(r(E)-r(X+A)) (y-1)^(|X|-r(X)) z^(r(X+A)-r(X))."""
    g, A = inst.graph, inst.pointed
    rest = [i for i in g.edge_ids if i not in A]
    rE = g.rank()
    xm, ym = PX - 1, PY - 1
    total = ZERO
    for X in iter_subsets(rest):
        rX = g.rank(X)
        rXA = g.rank(set(X) | A)
        total = total + xm ** (rE - rXA) * ym ** (len(X) - rX) * PZ ** (rXA - rX)
    return total


def set_pointed_via_relative(inst: PointedInstance) -> MultiPoly:
    """Pointed edges become zero edges, the rest one colour; psi = z^rank."""
    g, A = inst.graph, inst.pointed
    h = g.recolor({i: ("0" if i in A else POINTED_COLOR) for i in g.edge_ids})
    t = relative_tutte_dc(h, psi_rank_z, zero=A)
    c = POINTED_COLOR
    return t.substitute({Var("x", c): ONE, Var("y", c): ONE, Var("X", c): PX, Var("Y", c): PY})


def random_cluster_Z(inst: ClusterInstance) -> MultiPoly:
    """Sum over C of prod_{C} p * prod_{E-C} (1-p) * kappa^(components of (V, C))."""
    g = inst.graph
    ids = list(g.edge_ids)
    weights: dict[int, Fraction] = {}
    for C in iter_subsets(ids):
        chosen = set(C)
        w = Fraction(1)
        for i in ids:
            w *= inst.p[i] if i in chosen else 1 - inst.p[i]
        if w:
            k = g.num_components(without=[i for i in ids if i not in chosen])
            weights[k] = weights.get(k, Fraction(0)) + w
    total = ZERO
    for k in sorted(weights):
        total = total + KAPPA ** k * weights[k]
    return total
