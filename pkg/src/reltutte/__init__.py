"""Exact relative Tutte polynomials of edge-colored graphs with a zero-edge subgraph,
and the Kauffman bracket / Jones polynomial of virtual links computed from face graphs."""

from .dc import MemoCache, ordinary_tutte, relative_tutte_dc
from .expansion import relative_tutte_expansion
from .graph import ZERO, ColoredMultigraph, Edge
from .knots import (
    FaceGraph,
    VirtualDiagram,
    bracket_from_face_graph,
    format_jones,
    jones_from_bracket,
    parse_pd,
    state_sum_bracket,
)
from .poly import MultiPoly, localize, parse_poly
from .psi import PSI_REGISTRY, get_psi, zero_order

__all__ = [
    "ZERO",
    "ColoredMultigraph",
    "Edge",
    "MultiPoly",
    "parse_poly",
    "localize",
    "relative_tutte_dc",
    "relative_tutte_expansion",
    "ordinary_tutte",
    "MemoCache",
    "PSI_REGISTRY",
    "get_psi",
    "zero_order",
    "FaceGraph",
    "VirtualDiagram",
    "parse_pd",
    "bracket_from_face_graph",
    "state_sum_bracket",
    "jones_from_bracket",
    "format_jones",
]
