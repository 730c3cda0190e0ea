"""Memoized deletion-contraction for relative Tutte polynomials."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .canon import canonical_key, literal_key
from .graph import ColoredMultigraph, sort_key
from .poly import ONE, XLOC, YLOC, MultiPoly, X_, Y_, localize, x_, y_

__all__ = [
    "EdgeWeights",
    "MemoCache",
    "symbolic_weights",
    "localized_weights",
    "relative_tutte_dc",
    "ordinary_tutte",
]


@dataclass(frozen=True)
class EdgeWeights:
    """The four weights of one color: bridge, loop, contract, delete."""

    X: MultiPoly
    Y: MultiPoly
    x: MultiPoly
    y: MultiPoly


def symbolic_weights(color: str) -> EdgeWeights:
    return EdgeWeights(X_(color), Y_(color), x_(color), y_(color))


def localized_weights(color: str) -> EdgeWeights:
    return EdgeWeights(x_(color) + XLOC * y_(color), y_(color) + YLOC * x_(color),
                       x_(color), y_(color))


class MemoCache:
    """Thread-safe map from graph keys to polynomials.

    Concurrent get-or-insert may compute a value twice; the first insert wins
    and later inserts for the same key must agree. Size is bounded by
    ``limit`` (default from ``REL_TUTTE_CACHE_LIMIT``); once full, new values
    are simply not stored.
    """

    def __init__(self, limit: int | None = None):
        if limit is None:
            env = os.environ.get("REL_TUTTE_CACHE_LIMIT")
            limit = int(env) if env else None
        self.limit = limit
        self._data: dict[Hashable, MultiPoly] = {}
        self._lock = threading.Lock()
        self._context: Hashable | None = None
        self.hits = 0
        self.misses = 0

    def bind(self, context: Hashable) -> None:
        """Tie the cache to one (psi, weights, key mode) configuration."""
        with self._lock:
            if self._context is None:
                self._context = context
            elif self._context != context:
                raise ValueError("MemoCache reused with a different psi/weights configuration")

    def get(self, key: Hashable) -> MultiPoly | None:
        v = self._data.get(key)
        if v is None:
            self.misses += 1
        else:
            self.hits += 1
        return v

    def put(self, key: Hashable, value: MultiPoly) -> MultiPoly:
        with self._lock:
            old = self._data.get(key)
            if old is not None:
                if old != value:
                    raise AssertionError(f"cache conflict for key {key!r}")
                return old
            if self.limit is None or len(self._data) < self.limit:
                self._data[key] = value
            return value

    def __len__(self) -> int:
        return len(self._data)


WeightSpec = Callable[[str], EdgeWeights] | Mapping[str, EdgeWeights]


def _weight_lookup(weights) -> Callable[[str], EdgeWeights]:
    if weights is None:
        return symbolic_weights
    if callable(weights):
        return weights
    return lambda c: weights[c]


def relative_tutte_dc(
    g: ColoredMultigraph,
    psi: Callable[[ColoredMultigraph], MultiPoly],
    *,
    zero: Iterable | None = None,
    weights: WeightSpec | None = None,
    invariant_weights: bool = False,
    localized: bool = False,
    order: Sequence | None = None,
    cache: MemoCache | None | bool = True,
) -> MultiPoly:
    """Relative Tutte polynomial by deletion-contraction on the regular edges.

    ``zero`` is the distinguished edge set (default: edges colored ``"0"``).
    Residual graphs with no regular edges are passed whole to ``psi``.

    Edge choice: with ``order``, the first regular edge of ``order`` still
    present; otherwise the smallest-id loop or bridge, else the smallest id.
    With symbolic weights the result depends on that choice; it is
    choice-independent after :func:`~reltutte.poly.localize`. ``localized``
    computes directly in the localized ring. Memo keys collapse isomorphic
    graphs only when values are choice-independent (``localized`` or
    ``invariant_weights``); otherwise they are literal.
    """
    H = g.zero_edges() if zero is None else frozenset(zero)
    if localized:
        if weights is not None:
            raise ValueError("localized=True uses the localized weights")
        weight_of = localized_weights
        invariant = True
    else:
        weight_of = _weight_lookup(weights)
        invariant = invariant_weights
    rank = None
    if order is not None:
        rank = {eid: i for i, eid in enumerate(order)}

    if cache is True:
        cache = MemoCache()
    elif cache is False:
        cache = None
    if cache is not None:
        context = (getattr(psi, "name", repr(psi)), invariant, localized,
                   None if weights is None else repr(weights), tuple(order) if order else None)
        cache.bind(context)
    keyfn = (lambda h: canonical_key(h, H)) if invariant else (lambda h: literal_key(h, H))
    wcache: dict[str, EdgeWeights] = {}

    def w(color: str) -> EdgeWeights:
        ew = wcache.get(color)
        if ew is None:
            ew = wcache[color] = weight_of(color)
        return ew

    def pick(h: ColoredMultigraph, regular: list) -> tuple:
        if rank is not None:
            return min(regular, key=lambda i: (rank.get(i, len(rank)), sort_key(i))), None
        bridges = h.bridges()
        for i in regular:
            e = h.edge(i)
            if e.is_loop:
                return i, "loop"
            if i in bridges:
                return i, "bridge"
        return regular[0], "plain"

    def rec(h: ColoredMultigraph) -> MultiPoly:
        key = keyfn(h) if cache is not None else None
        if key is not None:
            hit = cache.get(key)
            if hit is not None:
                return hit
        regular = [i for i in h.edge_ids if i not in H]
        if not regular:
            val = psi(h)
            if not isinstance(val, MultiPoly):
                val = MultiPoly.const(val)
            if localized:
                val = localize(val)
        else:
            eid, kind = pick(h, regular)
            e = h.edge(eid)
            if kind is None:
                kind = "loop" if e.is_loop else ("bridge" if h.is_bridge(eid) else "plain")
            ew = w(e.color)
            if kind == "loop":
                val = ew.Y * rec(h.delete_edge(eid))
            elif kind == "bridge":
                val = ew.X * rec(h.contract_edge(eid))
            else:
                val = ew.y * rec(h.delete_edge(eid)) + ew.x * rec(h.contract_edge(eid))
        if key is not None:
            val = cache.put(key, val)
        return val

    return rec(g)


def ordinary_tutte(g: ColoredMultigraph, x=None, y=None, *, cache: dict | None = None):
    """Ordinary (uncolored) Tutte polynomial, as a product over blocks.

    With ``x``/``y`` left as ``None`` the result is a MultiPoly in the plain
    variables x, y; integer (or polynomial) values evaluate it directly.
    """
    from .poly import PX, PY

    xv = PX if x is None else x
    yv = PY if y is None else y
    one = ONE if isinstance(xv, MultiPoly) or isinstance(yv, MultiPoly) else 1
    memo = {} if cache is None else cache
    uncolored = lambda e: 0

    def block_value(b: ColoredMultigraph):
        m = len(b)
        if m == 0:
            return one
        if m == 1:
            return yv if b.edges[0].is_loop else xv
        key = canonical_key(b, (), edge_attr=uncolored)
        if key[0] == "canon" and (key, xv, yv) in memo:
            return memo[(key, xv, yv)]
        val = whole(b)
        if key[0] == "canon":
            memo[(key, xv, yv)] = val
        return val

    def whole(h: ColoredMultigraph):
        blocks = h.blocks()
        if len(blocks) > 1 or (len(blocks) == 1 and len(blocks[0]) < len(h)):
            out = one
            for b in blocks:
                out = out * block_value(b)
            return out
        if len(h) <= 1:
            return block_value(h)
        # a single 2-connected block with >= 2 edges: no loops or bridges
        eid = h.edge_ids[0]
        return whole(h.delete_edge(eid)) + whole(h.contract_edge(eid))

    return whole(g)
