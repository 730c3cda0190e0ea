"""Edge-colored multigraphs with stable edge ids.

Graphs are immutable values: deletion and contraction return new graphs and
never renumber edges, so a contracting/deleting split can always be tracked by
edge id even after parallel edges and loops appear.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

__all__ = [
    "ZERO",
    "Edge",
    "ColoredMultigraph",
    "ContractingSplit",
    "DisjointSet",
    "GraphError",
    "UnknownEdge",
    "ContractLoop",
    "NotACutVertex",
    "InvalidAttachment",
    "BadPartition",
    "BadLabeling",
    "sort_key",
    "disjoint_union",
]

ZERO = "0"

Vertex = Hashable
EdgeId = Hashable


class GraphError(ValueError):
    pass


class UnknownEdge(GraphError, KeyError):
    pass


class ContractLoop(GraphError):
    pass


class NotACutVertex(GraphError):
    pass


class InvalidAttachment(GraphError):
    pass


class BadPartition(GraphError):
    pass


class BadLabeling(GraphError):
    pass


def sort_key(x) -> tuple:
    """Total order over mixed int/str ids: ints first, numerically."""
    if isinstance(x, bool):
        return (1, str(x))
    if isinstance(x, int):
        return (0, x, "")
    return (1, 0, str(x))


class DisjointSet:
    """Union-find over arbitrary hashable items, with path halving."""

    __slots__ = ("_parent", "count")

    def __init__(self, items: Iterable = ()):
        self._parent = {x: x for x in items}
        self.count = len(self._parent)

    def add(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self.count += 1

    def find(self, x):
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self._parent[rb] = ra
        self.count -= 1
        return True

    def groups(self) -> dict:
        out: dict = {}
        for x in self._parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Edge:
    id: EdgeId
    u: Vertex
    v: Vertex
    color: str = "+"
    label: int | None = None

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def ends(self) -> tuple[Vertex, Vertex]:
        return (self.u, self.v)

    def other(self, w: Vertex) -> Vertex:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class ContractingSplit:
    contracting: frozenset
    deleting: frozenset
    zero: frozenset

    def __repr__(self) -> str:
        fmt = lambda s: "{" + ", ".join(map(str, sorted(s, key=sort_key))) + "}"
        return f"ContractingSplit(C={fmt(self.contracting)}, D={fmt(self.deleting)}, H={fmt(self.zero)})"


class ColoredMultigraph:
    """Vertices plus colored edges; loops and parallel edges allowed.

    ``color`` is any string; ``"0"`` marks a zero edge. Labels are optional
    and only consulted by the activity computations.
    """

    __slots__ = ("_vertices", "_edges", "_hash")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge]):
        verts = tuple(sorted(set(vertices), key=sort_key))
        vset = set(verts)
        emap: dict[EdgeId, Edge] = {}
        for e in edges:
            if e.id in emap:
                raise GraphError(f"duplicate edge id {e.id!r}")
            if e.u not in vset or e.v not in vset:
                raise GraphError(f"edge {e.id!r} has an endpoint outside the vertex set")
            emap[e.id] = e
        self._vertices = verts
        self._edges = dict(sorted(emap.items(), key=lambda kv: sort_key(kv[0])))
        self._hash = None

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple],
        vertices: Iterable[Vertex] = (),
    ) -> "ColoredMultigraph":
        """Build from ``(id, u, v[, color[, label]])`` tuples; vertices are inferred."""
        es = [Edge(*t) for t in edges]
        vs = set(vertices)
        for e in es:
            vs.update(e.ends)
        return cls(vs, es)

    # -- access ------------------------------------------------------------

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(self._edges)

    def edge(self, eid: EdgeId) -> Edge:
        try:
            return self._edges[eid]
        except KeyError:
            raise UnknownEdge(f"unknown edge {eid!r}") from None

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._edges

    def __len__(self) -> int:
        return len(self._edges)

    def colors(self) -> set[str]:
        return {e.color for e in self._edges.values()}

    def zero_edges(self) -> frozenset:
        return frozenset(e.id for e in self._edges.values() if e.color == ZERO)

    def incident(self, w: Vertex) -> list[Edge]:
        return [e for e in self._edges.values() if w in e.ends]

    def degree(self, w: Vertex) -> int:
        return sum((e.u == w) + (e.v == w) for e in self._edges.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredMultigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self._edges.values())))
        return self._hash

    def __repr__(self) -> str:
        es = ", ".join(f"{e.id}:{e.u}-{e.v}[{e.color}]" for e in self._edges.values())
        return f"ColoredMultigraph(V={list(self._vertices)}, E=[{es}])"

    # -- structural edits --------------------------------------------------

    def delete_edge(self, eid: EdgeId) -> "ColoredMultigraph":
        self.edge(eid)
        return self._replace(e for e in self._edges.values() if e.id != eid)

    def delete_edges(self, eids: Iterable[EdgeId]) -> "ColoredMultigraph":
        drop = set(eids)
        for eid in drop:
            self.edge(eid)
        return self._replace(e for e in self._edges.values() if e.id not in drop)

    def contract_edge(self, eid: EdgeId) -> "ColoredMultigraph":
        """Merge the endpoints of ``eid``; the smaller vertex id survives."""
        e = self.edge(eid)
        if e.is_loop:
            raise ContractLoop(f"cannot contract loop {eid!r}")
        keep, gone = sorted(e.ends, key=sort_key)
        edges = []
        for f in self._edges.values():
            if f.id == eid:
                continue
            if gone in f.ends:
                f = Edge(f.id, keep if f.u == gone else f.u, keep if f.v == gone else f.v,
                         f.color, f.label)
            edges.append(f)
        return ColoredMultigraph((w for w in self._vertices if w != gone), edges)

    def contract_edges(self, eids: Iterable[EdgeId]) -> "ColoredMultigraph":
        g = self
        for eid in sorted(eids, key=sort_key):
            g = g.contract_edge(eid)
        return g

    def recolor(self, colors: Mapping[EdgeId, str]) -> "ColoredMultigraph":
        return self._replace(
            Edge(e.id, e.u, e.v, colors.get(e.id, e.color), e.label) for e in self._edges.values()
        )

    def with_labels(self, labels: Mapping[EdgeId, int]) -> "ColoredMultigraph":
        return self._replace(
            Edge(e.id, e.u, e.v, e.color, labels.get(e.id, e.label)) for e in self._edges.values()
        )

    def add_edge(self, eid: EdgeId, u: Vertex, v: Vertex, color: str = "+",
                 label: int | None = None) -> "ColoredMultigraph":
        return ColoredMultigraph(self._vertices, list(self._edges.values()) + [Edge(eid, u, v, color, label)])

    def add_vertex(self, w: Vertex) -> "ColoredMultigraph":
        return ColoredMultigraph(self._vertices + (w,), self._edges.values())

    def relabel_vertices(self, mapping: Mapping[Vertex, Vertex]) -> "ColoredMultigraph":
        """Rename vertices; mapping two vertices to one id identifies them."""
        m = lambda w: mapping.get(w, w)
        return ColoredMultigraph(
            {m(w) for w in self._vertices},
            (Edge(e.id, m(e.u), m(e.v), e.color, e.label) for e in self._edges.values()),
        )

    def subgraph(self, eids: Iterable[EdgeId], vertices: Iterable[Vertex] | None = None) -> "ColoredMultigraph":
        es = [self.edge(i) for i in eids]
        if vertices is None:
            vs = {w for e in es for w in e.ends}
        else:
            vs = set(vertices)
        return ColoredMultigraph(vs, es)

    def induced_on_vertices(self, vs: Iterable[Vertex]) -> "ColoredMultigraph":
        vs = set(vs)
        return ColoredMultigraph(vs, (e for e in self._edges.values() if e.u in vs and e.v in vs))

    def _replace(self, edges: Iterable[Edge]) -> "ColoredMultigraph":
        return ColoredMultigraph(self._vertices, edges)

    def fresh_vertex(self) -> Vertex:
        ints = [w for w in self._vertices if isinstance(w, int) and not isinstance(w, bool)]
        if len(ints) == len(self._vertices):
            return max(ints, default=-1) + 1
        n = len(self._vertices)
        names = {str(w) for w in self._vertices}
        while f"v{n}" in names:
            n += 1
        return f"v{n}"

    # -- connectivity ------------------------------------------------------

    def _dsu(self, skip: Iterable[EdgeId] = ()) -> DisjointSet:
        skip = set(skip)
        ds = DisjointSet(self._vertices)
        for e in self._edges.values():
            if e.id not in skip:
                ds.union(e.u, e.v)
        return ds

    def num_components(self, without: Iterable[EdgeId] = ()) -> int:
        return self._dsu(without).count

    def components(self) -> list[tuple[Vertex, ...]]:
        groups = self._dsu().groups().values()
        parts = [tuple(sorted(g, key=sort_key)) for g in groups]
        return sorted(parts, key=lambda p: sort_key(p[0]))

    def component_subgraphs(self) -> list["ColoredMultigraph"]:
        return [self.induced_on_vertices(p) for p in self.components()]

    def rank(self, eids: Iterable[EdgeId] | None = None) -> int:
        """Graphic rank |V| - k of the spanning subgraph on ``eids`` (all edges by default)."""
        if eids is None:
            return len(self._vertices) - self.num_components()
        keep = set(eids)
        ds = DisjointSet(self._vertices)
        for i in keep:
            e = self.edge(i)
            ds.union(e.u, e.v)
        return len(self._vertices) - ds.count

    def is_loop(self, eid: EdgeId) -> bool:
        return self.edge(eid).is_loop

    def is_bridge(self, eid: EdgeId) -> bool:
        e = self.edge(eid)
        if e.is_loop:
            return False
        ds = DisjointSet(self._vertices)
        for f in self._edges.values():
            if f.id != eid:
                ds.union(f.u, f.v)
        return ds.find(e.u) != ds.find(e.v)

    def bridges(self) -> set[EdgeId]:
        return {b for blk in self._block_edge_sets() if len(blk) == 1
                for b in blk if not self._edges[b].is_loop}

    # -- blocks ------------------------------------------------------------

    def _block_edge_sets(self) -> list[frozenset]:
        adj: dict[Vertex, list[tuple[EdgeId, Vertex]]] = {w: [] for w in self._vertices}
        loops = []
        for e in self._edges.values():
            if e.is_loop:
                loops.append(frozenset([e.id]))
            else:
                adj[e.u].append((e.id, e.v))
                adj[e.v].append((e.id, e.u))
        disc: dict[Vertex, int] = {}
        low: dict[Vertex, int] = {}
        out: list[frozenset] = []
        counter = itertools.count()
        for root in self._vertices:
            if root in disc:
                continue
            disc[root] = low[root] = next(counter)
            stack: list[EdgeId] = []
            # frames: (vertex, parent edge id, neighbour iterator)
            frames = [(root, None, iter(adj[root]))]
            while frames:
                u, pe, it = frames[-1]
                advanced = False
                for eid, w in it:
                    if eid == pe:
                        continue
                    if w not in disc:
                        stack.append(eid)
                        disc[w] = low[w] = next(counter)
                        frames.append((w, eid, iter(adj[w])))
                        advanced = True
                        break
                    if disc[w] < disc[u]:
                        stack.append(eid)
                        low[u] = min(low[u], disc[w])
                if advanced:
                    continue
                frames.pop()
                if frames:
                    p = frames[-1][0]
                    low[p] = min(low[p], low[u])
                    if low[u] >= disc[p]:
                        blk = []
                        while True:
                            x = stack.pop()
                            blk.append(x)
                            if x == pe:
                                break
                        out.append(frozenset(blk))
        return out + loops

    def blocks(self) -> list["ColoredMultigraph"]:
        """Maximal 2-connected pieces; bridges, loops and isolated vertices are blocks of their own."""
        result = [self.subgraph(s) for s in self._block_edge_sets()]
        touched = {w for e in self._edges.values() for w in e.ends}
        result += [ColoredMultigraph([w], []) for w in self._vertices if w not in touched]
        return sorted(result, key=lambda b: (sort_key(b.edge_ids[0]) if len(b) else (2, 0, ""),
                                             sort_key(b.vertices[0])))

    def blocks_at(self, w: Vertex) -> list[frozenset]:
        return [s for s in self._block_edge_sets()
                if any(w in self._edges[i].ends for i in s)]

    def vertex_pivot(
        self,
        cut: Vertex,
        moved: Iterable[EdgeId],
        attach: Vertex,
        anchor: Vertex | None = None,
    ) -> "ColoredMultigraph":
        """Split at ``cut``, then re-glue the moved side at another vertex.

        ``moved`` names edges whose blocks (among the blocks at ``cut``) go to
        the second part. The second part's copy of ``cut`` gets a fresh id;
        then ``attach`` (a vertex of the second part's component) is
        identified with ``anchor`` (default ``cut``, a vertex of the first
        part's component).
        """
        if cut not in self._vertices:
            raise NotACutVertex(f"{cut!r} is not a vertex")
        at_cut = self.blocks_at(cut)
        if len(at_cut) < 2:
            raise NotACutVertex(f"{cut!r} lies in fewer than two blocks")
        moved = set(moved)
        chosen = [b for b in at_cut if b & moved]
        if not chosen or len(chosen) == len(at_cut):
            raise InvalidAttachment("side selection must pick a nonempty proper subset of the blocks at the cut")
        moving_edges = frozenset().union(*chosen)
        u2 = self.fresh_vertex()
        edges = []
        for e in self._edges.values():
            if e.id in moving_edges:
                e = Edge(e.id, u2 if e.u == cut else e.u, u2 if e.v == cut else e.v, e.color, e.label)
            edges.append(e)
        split = ColoredMultigraph(self._vertices + (u2,), edges)
        ds = split._dsu()
        if attach not in split._vertices or ds.find(attach) != ds.find(u2):
            raise InvalidAttachment(f"{attach!r} is not in the moved part's component")
        anchor = cut if anchor is None else anchor
        if anchor not in self._vertices or ds.find(anchor) != ds.find(cut):
            raise InvalidAttachment(f"{anchor!r} is not in the remaining part's component")
        if attach == cut:
            raise InvalidAttachment("attachment vertex must belong to the moved part")
        return split.relabel_vertices({attach: anchor})

    # -- contracting sets --------------------------------------------------

    def _check_split(self, zero: Iterable[EdgeId], contracting: Iterable[EdgeId]) -> tuple[frozenset, frozenset, frozenset]:
        H = frozenset(zero)
        C = frozenset(contracting)
        for i in H | C:
            self.edge(i)
        if H & C:
            raise BadPartition("contracting set meets the zero set")
        D = frozenset(self._edges) - H - C
        return C, D, H

    def is_contracting_set(self, zero: Iterable[EdgeId], contracting: Iterable[EdgeId]) -> bool:
        """C acyclic and deleting D = E - (C + H) keeps the component count."""
        C, D, H = self._check_split(zero, contracting)
        ds = DisjointSet(self._vertices)
        for i in C:
            e = self._edges[i]
            if not ds.union(e.u, e.v):
                return False
        return self.num_components(without=D) == self.num_components()

    def has_basis_between(self, zero: Iterable[EdgeId], contracting: Iterable[EdgeId]) -> bool:
        """Whether some spanning forest B satisfies C <= B <= C + H."""
        C, D, H = self._check_split(zero, contracting)
        ds = DisjointSet(self._vertices)
        size = 0
        for i in sorted(C, key=sort_key):
            e = self._edges[i]
            if not ds.union(e.u, e.v):
                return False
            size += 1
        for i in sorted(H, key=sort_key):
            e = self._edges[i]
            if ds.union(e.u, e.v):
                size += 1
        return size == self.rank()

    def enumerate_contracting_sets(self, zero: Iterable[EdgeId] | None = None) -> list[ContractingSplit]:
        """All contracting sets, ordered by size then lexicographically by edge id."""
        H = frozenset(self.zero_edges() if zero is None else zero)
        regular = [i for i in self._edges if i not in H]
        base = self.num_components()
        out = []
        for k in range(len(regular) + 1):
            for combo in itertools.combinations(regular, k):
                C = frozenset(combo)
                ds = DisjointSet(self._vertices)
                if not all(ds.union(self._edges[i].u, self._edges[i].v) for i in combo):
                    continue
                for i in H:
                    ds.union(self._edges[i].u, self._edges[i].v)
                if ds.count != base:
                    continue
                out.append(ContractingSplit(C, frozenset(regular) - C, H))
        return out

    def split_residue(self, split: ContractingSplit) -> "ColoredMultigraph":
        """The graph H_C: delete the deleting set, then contract the contracting set."""
        return self.delete_edges(split.deleting).contract_edges(split.contracting)


def disjoint_union(graphs: Sequence[ColoredMultigraph]) -> ColoredMultigraph:
    """Union with vertex ids tagged ``(index, v)`` and edge ids ``(index, e)`` unless already disjoint."""
    vs, es = [], []
    seen_v, seen_e = set(), set()
    clash = False
    for g in graphs:
        if seen_v & set(g.vertices) or seen_e & set(g.edge_ids):
            clash = True
            break
        seen_v |= set(g.vertices)
        seen_e |= set(g.edge_ids)
    for k, g in enumerate(graphs):
        if clash:
            vm = {w: f"{k}.{w}" for w in g.vertices}
            vs.extend(vm.values())
            es.extend(Edge(f"{k}.{e.id}", vm[e.u], vm[e.v], e.color, e.label) for e in g.edges)
        else:
            vs.extend(g.vertices)
            es.extend(g.edges)
    return ColoredMultigraph(vs, es)


def iter_subsets(items: Sequence) -> Iterator[tuple]:
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)
