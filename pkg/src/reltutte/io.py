"""Graph and face-graph files.

A graph file is YAML (JSON is accepted too, being a subset)::

    vertices: [0, 1, 2]
    edges:
      - {id: e1, ends: [0, 1], color: "+"}
      - {id: h, ends: [1, 2], color: "0", label: 0}
    writhe: 3          # face graphs only

Every error names the file and, when known, the line.
"""

from __future__ import annotations

from pathlib import Path

import yaml

from .graph import ZERO, ColoredMultigraph, Edge, GraphError
from .knots import FaceGraph, MalformedDiagram, VirtualDiagram, parse_pd

__all__ = [
    "InputError",
    "parse_graph",
    "load_graph",
    "load_face_graph",
    "load_pd",
    "dump_graph",
]


class InputError(ValueError):
    """Malformed input file; the message carries ``file:line`` context."""


class _LineLoader(yaml.SafeLoader):
    pass


def _mapping_with_line(loader, node, deep=False):
    data = loader.construct_mapping(node, deep=True)
    data["__line__"] = node.start_mark.line + 1
    return data


_LineLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _mapping_with_line)


def _color(raw) -> str:
    c = str(raw).strip()
    return "-" if c == "−" else c


def _scalar_id(raw, what: str, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise InputError(f"{where}: {what} must be an integer or string, got {raw!r}")
    return raw


def _parse(text: str, source: str) -> tuple[ColoredMultigraph, dict]:
    try:
        doc = yaml.load(text, Loader=_LineLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line = f":{mark.line + 1}" if mark is not None else ""
        raise InputError(f"{source}{line}: not valid YAML/JSON ({getattr(exc, 'problem', exc)})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{source}: expected a mapping with 'vertices' and 'edges'")
    top = f"{source}:{doc.get('__line__', 1)}"
    vertices = doc.get("vertices", [])
    if not isinstance(vertices, list):
        raise InputError(f"{top}: 'vertices' must be a list")
    vertices = [_scalar_id(v, "vertex id", top) for v in vertices]
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise InputError(f"{top}: 'edges' must be a list")
    edges = []
    for k, item in enumerate(raw_edges):
        if not isinstance(item, dict):
            raise InputError(f"{top}: edge #{k + 1} must be a mapping")
        where = f"{source}:{item.get('__line__', '?')}"
        unknown = set(item) - {"id", "ends", "color", "label", "__line__"}
        if unknown:
            raise InputError(f"{where}: unknown edge field(s) {sorted(unknown)}")
        if "id" not in item or "ends" not in item:
            raise InputError(f"{where}: edge needs 'id' and 'ends'")
        eid = _scalar_id(item["id"], "edge id", where)
        ends = item["ends"]
        if not isinstance(ends, list) or len(ends) != 2:
            raise InputError(f"{where}: 'ends' must be a two-element list")
        u, v = (_scalar_id(w, "vertex id", where) for w in ends)
        color = _color(item.get("color", "+"))
        if not color:
            raise InputError(f"{where}: empty color")
        label = item.get("label")
        if label is not None and (isinstance(label, bool) or not isinstance(label, int) or label < 0):
            raise InputError(f"{where}: label must be a nonnegative integer")
        if label is not None and (label == 0) != (color == ZERO):
            raise InputError(f"{where}: label 0 is reserved for zero edges (color \"0\")")
        edges.append(Edge(eid, u, v, color, label))
    vset = set(vertices)
    if len(vset) != len(vertices):
        raise InputError(f"{top}: duplicate vertex ids")
    for e in edges:
        for w in e.ends:
            if w not in vset:
                raise InputError(f"{source}: edge {e.id!r} uses undeclared vertex {w!r}")
    labels = [e.label for e in edges if e.label]
    if len(labels) != len(set(labels)):
        raise InputError(f"{source}: nonzero labels must be distinct")
    try:
        g = ColoredMultigraph(vertices, edges)
    except GraphError as exc:
        raise InputError(f"{source}: {exc}") from None
    return g, doc


def parse_graph(text: str, source: str = "<graph>") -> ColoredMultigraph:
    return _parse(text, source)[0]


def load_graph(path: str | Path) -> ColoredMultigraph:
    path = Path(path)
    return parse_graph(_read(path), str(path))


def load_face_graph(path: str | Path, writhe: int | None = None) -> FaceGraph:
    """Face graph file; an explicit ``writhe`` overrides the file's field."""
    path = Path(path)
    g, doc = _parse(_read(path), str(path))
    w = doc.get("writhe", 0) if writhe is None else writhe
    if isinstance(w, bool) or not isinstance(w, int):
        raise InputError(f"{path}: 'writhe' must be an integer")
    try:
        return FaceGraph(g, w, name=path.stem)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def load_pd(path: str | Path) -> VirtualDiagram:
    path = Path(path)
    try:
        return parse_pd(_read(path), str(path))
    except MalformedDiagram as exc:
        raise InputError(str(exc)) from None


def dump_graph(g: ColoredMultigraph, writhe: int | None = None) -> str:
    """Inverse of :func:`parse_graph`, one edge per line."""
    lines = ["vertices: " + _flow(list(g.vertices))]
    lines.append("edges:" if len(g) else "edges: []")
    for e in g.edges:
        fields = [f"id: {_flow(e.id)}", f"ends: {_flow([e.u, e.v])}", f"color: {_flow(e.color)}"]
        if e.label is not None:
            fields.append(f"label: {e.label}")
        lines.append("  - {" + ", ".join(fields) + "}")
    if writhe is not None:
        lines.append(f"writhe: {writhe}")
    return "\n".join(lines) + "\n"


def _flow(x) -> str:
    return yaml.safe_dump(x, default_flow_style=True, width=10 ** 6).strip().removesuffix("\n...").strip()


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: cannot read ({exc.strerror})") from None
