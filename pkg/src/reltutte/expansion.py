"""Relative activities and the contracting-set expansion of T_H(G).

Two formulations of each activity are provided. The working one tests for a
bridge (resp. loop) after deleting larger deleting edges (resp. contracting
larger contracting edges); the other searches cocycles (resp. the unique
cycle) directly and exists to cross-check the first.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Mapping

from .dc import EdgeWeights, symbolic_weights
from .graph import (
    BadLabeling,
    BadPartition,
    ColoredMultigraph,
    ContractingSplit,
    DisjointSet,
    sort_key,
)
from .poly import ONE, ZERO, MultiPoly

__all__ = [
    "Activity",
    "default_labeling",
    "validate_labeling",
    "internal_activity",
    "external_activity",
    "edge_weight",
    "ExpansionPlan",
    "relative_tutte_expansion",
]


class Activity(enum.Enum):
    INTERNALLY_ACTIVE = "internally active"
    INTERNALLY_INACTIVE = "internally inactive"
    EXTERNALLY_ACTIVE = "externally active"
    EXTERNALLY_INACTIVE = "externally inactive"


def default_labeling(g: ColoredMultigraph, zero: Iterable | None = None) -> dict:
    H = g.zero_edges() if zero is None else frozenset(zero)
    labels = {i: 0 for i in H}
    n = 0
    for i in g.edge_ids:
        if i not in H:
            n += 1
            labels[i] = n
    return labels


def validate_labeling(g: ColoredMultigraph, zero: Iterable, labels: Mapping) -> None:
    """Zero edges get 0; regular edges distinct positive integers."""
    H = frozenset(zero)
    seen = set()
    for i in g.edge_ids:
        if i not in labels:
            raise BadLabeling(f"edge {i!r} has no label")
        lab = labels[i]
        if i in H:
            if lab != 0:
                raise BadLabeling(f"zero edge {i!r} must be labeled 0, got {lab}")
            continue
        if not isinstance(lab, int) or lab <= 0:
            raise BadLabeling(f"regular edge {i!r} needs a positive integer label, got {lab!r}")
        if lab in seen:
            raise BadLabeling(f"label {lab} used twice")
        seen.add(lab)


def _check(g, split: ContractingSplit, labels, eid, side: str) -> None:
    if side == "C" and eid not in split.contracting:
        raise BadPartition(f"edge {eid!r} is not in the contracting set")
    if side == "D" and eid not in split.deleting:
        raise BadPartition(f"edge {eid!r} is not in the deleting set")
    if labels.get(eid, 0) <= 0:
        raise BadLabeling(f"edge {eid!r} lacks a positive label")


def internal_activity(
    g: ColoredMultigraph,
    split: ContractingSplit,
    labels: Mapping,
    eid,
    method: str = "bridge",
) -> Activity:
    _check(g, split, labels, eid, "C")
    active = (_internal_by_cocycle if method == "cocycle" else _internal_by_bridge)(
        g, split, labels, eid)
    return Activity.INTERNALLY_ACTIVE if active else Activity.INTERNALLY_INACTIVE


def external_activity(
    g: ColoredMultigraph,
    split: ContractingSplit,
    labels: Mapping,
    eid,
    method: str = "loop",
) -> Activity:
    _check(g, split, labels, eid, "D")
    active = (_external_by_cycle if method == "cycle" else _external_by_loop)(
        g, split, labels, eid)
    return Activity.EXTERNALLY_ACTIVE if active else Activity.EXTERNALLY_INACTIVE


def _internal_by_bridge(g, split, labels, eid) -> bool:
    # bridge once every larger deleting edge is gone
    lab = labels[eid]
    e = g.edge(eid)
    ds = DisjointSet(g.vertices)
    for f in g.edges:
        if f.id == eid or (f.id in split.deleting and labels[f.id] > lab):
            continue
        ds.union(f.u, f.v)
    return ds.find(e.u) != ds.find(e.v)


def _external_by_loop(g, split, labels, eid) -> bool:
    # loop once every larger contracting edge is contracted
    lab = labels[eid]
    e = g.edge(eid)
    ds = DisjointSet(g.vertices)
    for i in split.contracting:
        if labels[i] > lab:
            f = g.edge(i)
            ds.union(f.u, f.v)
    return ds.find(e.u) == ds.find(e.v)


def _internal_by_cocycle(g, split, labels, eid) -> bool:
    # some minimal cut inside D + {e} contains e and has e as its smallest edge
    base = g.num_components()
    pool = sorted(split.deleting, key=sort_key)
    lab = labels[eid]
    for k in range(len(pool) + 1):
        for rest in itertools.combinations(pool, k):
            cut = (eid,) + rest
            if g.num_components(without=cut) == base:
                continue
            if any(g.num_components(without=[c for c in cut if c != s]) > base for s in cut):
                continue
            if all(labels[f] > lab for f in rest):
                return True
    return False


def _external_by_cycle(g, split, labels, eid) -> bool:
    e = g.edge(eid)
    if e.is_loop:
        return True
    # path between the endpoints inside the forest C
    adj: dict = {w: [] for w in g.vertices}
    for i in split.contracting:
        f = g.edge(i)
        adj[f.u].append((i, f.v))
        adj[f.v].append((i, f.u))
    prev = {e.u: None}
    stack = [e.u]
    while stack:
        w = stack.pop()
        for i, nxt in adj[w]:
            if nxt not in prev:
                prev[nxt] = (i, w)
                stack.append(nxt)
    if e.v not in prev:
        return False
    lab = labels[eid]
    w = e.v
    while prev[w] is not None:
        i, w = prev[w]
        if labels[i] < lab:
            return False
    return True


def edge_weight(
    g: ColoredMultigraph,
    split: ContractingSplit,
    labels: Mapping,
    eid,
    weights: Callable[[str], EdgeWeights] = symbolic_weights,
) -> MultiPoly:
    ew = weights(g.edge(eid).color)
    if eid in split.contracting:
        return ew.X if _internal_by_bridge(g, split, labels, eid) else ew.x
    if eid in split.deleting:
        return ew.Y if _external_by_loop(g, split, labels, eid) else ew.y
    raise BadPartition(f"zero edge {eid!r} carries no weight")


class ExpansionPlan:
    """Contracting sets and their residue values for one (graph, zero set, psi).

    These do not depend on the labeling, so several labelings can be
    evaluated against one plan.
    """

    def __init__(self, g: ColoredMultigraph, psi: Callable[[ColoredMultigraph], MultiPoly],
                 zero: Iterable | None = None):
        self.graph = g
        self.zero = g.zero_edges() if zero is None else frozenset(zero)
        self.splits = g.enumerate_contracting_sets(self.zero)
        self.residues = [g.split_residue(s) for s in self.splits]
        self.psi_values = [_as_poly(psi(r)) for r in self.residues]

    def terms(self, labels: Mapping | None = None,
              weights: Callable[[str], EdgeWeights] = symbolic_weights) -> list[tuple[ContractingSplit, MultiPoly, MultiPoly]]:
        labels = default_labeling(self.graph, self.zero) if labels is None else labels
        validate_labeling(self.graph, self.zero, labels)
        out = []
        for split, pv in zip(self.splits, self.psi_values):
            W = ONE
            for eid in self.graph.edge_ids:
                if eid not in self.zero:
                    W = W * edge_weight(self.graph, split, labels, eid, weights)
            out.append((split, W, pv))
        return out

    def evaluate(self, labels: Mapping | None = None,
                 weights: Callable[[str], EdgeWeights] = symbolic_weights,
                 threads: int = 1) -> MultiPoly:
        if threads > 1 and len(self.splits) > 1:
            return self._evaluate_parallel(labels, weights, threads)
        total = ZERO
        for _, W, pv in self.terms(labels, weights):
            total = total + W * pv
        return total

    def _evaluate_parallel(self, labels, weights, threads: int) -> MultiPoly:
        labels = default_labeling(self.graph, self.zero) if labels is None else labels
        validate_labeling(self.graph, self.zero, labels)
        chunks = [list(range(k, len(self.splits), threads)) for k in range(threads)]
        jobs = [(self.graph, self.zero, [self.splits[i] for i in c],
                 [self.psi_values[i] for i in c], dict(labels), weights) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_chunk_sum, jobs))
        total = ZERO
        for p in parts:
            total = total + p
        return total


def _chunk_sum(job) -> MultiPoly:
    g, zero, splits, pvs, labels, weights = job
    total = ZERO
    for split, pv in zip(splits, pvs):
        W = ONE
        for eid in g.edge_ids:
            if eid not in zero:
                W = W * edge_weight(g, split, labels, eid, weights)
        total = total + W * pv
    return total


def _as_poly(v) -> MultiPoly:
    return v if isinstance(v, MultiPoly) else MultiPoly.const(v)


def relative_tutte_expansion(
    g: ColoredMultigraph,
    psi: Callable[[ColoredMultigraph], MultiPoly],
    *,
    zero: Iterable | None = None,
    labels: Mapping | None = None,
    threads: int = 1,
) -> MultiPoly:
    """Sum over contracting sets of the activity-weight product times psi(H_C)."""
    return ExpansionPlan(g, psi, zero).evaluate(labels, threads=threads)
