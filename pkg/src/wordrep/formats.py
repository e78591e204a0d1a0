"""JSON and DOT serialisation for graphs, orientations and colourings."""

from __future__ import annotations

import json
from typing import Any, Mapping

from .coloring import Coloring, ColoringError
from .graph import Graph, GraphError
from .semitrans import Orientation, OrientationError

# distinct, readable fill colours for colour classes 1..8
_FILL = ["white", "lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon", "lightgray", "wheat"]


class FormatError(ValueError):
    """Malformed input; ``str()`` starts with the source location."""

    def __init__(self, source: str, message: str):
        super().__init__(f"{source}: {message}")
        self.source = source


def _is_dense(vertices) -> bool:
    return list(vertices) == list(range(len(vertices)))


def graph_to_json(g: Graph) -> dict:
    data: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}
    if not _is_dense(g.vertices):
        data["vertices"] = list(g.vertices)
    return data


def graph_from_json(data: Any, source: str = "<json>") -> Graph:
    if isinstance(data, Mapping) and "graph" in data and "edges" not in data:
        data = data["graph"]
    if not isinstance(data, Mapping):
        raise FormatError(source, "expected a JSON object with 'n' and 'edges'")
    try:
        n = data["n"]
        edges = data["edges"]
    except KeyError as exc:
        raise FormatError(source, f"missing key {exc.args[0]!r}") from None
    vertices = data.get("vertices", list(range(n)) if isinstance(n, int) else None)
    if not isinstance(n, int) or n < 0:
        raise FormatError(source, "'n' must be a non-negative integer")
    if not isinstance(vertices, list) or len(vertices) != n:
        raise FormatError(source, "'vertices' must list exactly n ids")
    pairs = []
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise FormatError(f"{source}: edges[{i}]", f"expected a pair of integers, got {e!r}")
        pairs.append((e[0], e[1]))
    try:
        return Graph.build(vertices, pairs)
    except GraphError as exc:
        raise FormatError(source, str(exc)) from None


def orientation_to_json(o: Orientation) -> dict:
    data: dict[str, Any] = {"n": o.base.n, "arcs": [list(a) for a in o.sorted_arcs()]}
    if not _is_dense(o.base.vertices):
        data["vertices"] = list(o.base.vertices)
    return data


def orientation_from_json(data: Any, source: str = "<json>") -> Orientation:
    if isinstance(data, Mapping) and "orientation" in data and "arcs" not in data:
        data = data["orientation"]
    if not isinstance(data, Mapping):
        raise FormatError(source, "expected a JSON object with 'n' and 'arcs'")
    try:
        n = data["n"]
        arcs = data["arcs"]
    except KeyError as exc:
        raise FormatError(source, f"missing key {exc.args[0]!r}") from None
    if not isinstance(n, int) or n < 0:
        raise FormatError(source, "'n' must be a non-negative integer")
    vertices = data.get("vertices", list(range(n)))
    pairs = []
    for i, a in enumerate(arcs):
        if not (isinstance(a, list) and len(a) == 2 and all(isinstance(x, int) for x in a)):
            raise FormatError(f"{source}: arcs[{i}]", f"expected a pair of integers, got {a!r}")
        pairs.append((a[0], a[1]))
    try:
        return Orientation.from_arcs(vertices, pairs)
    except (GraphError, OrientationError) as exc:
        raise FormatError(source, str(exc)) from None


def coloring_from_json(data: Any, source: str = "<json>") -> Coloring:
    if isinstance(data, Mapping) and "coloring" in data and "colors" not in data:
        data = data["coloring"]
    try:
        return Coloring.from_json(data)
    except ColoringError as exc:
        raise FormatError(source, str(exc)) from None


def load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    except OSError as exc:
        raise FormatError(path, exc.strerror or str(exc)) from None


def to_dot(
    g: Graph,
    orientation: Orientation | None = None,
    coloring: Mapping[int, int] | None = None,
    name: str = "G",
) -> str:
    """DOT text; directed when an orientation is given, colour classes as fill colours."""
    directed = orientation is not None
    lines = [f"{'digraph' if directed else 'graph'} {name} {{"]
    for v in g.vertices:
        if coloring and v in coloring:
            c = coloring[v]
            fill = _FILL[c] if c < len(_FILL) else "gray"
            lines.append(f'  {v} [label="{v}:{c}", style=filled, fillcolor={fill}];')
        else:
            lines.append(f"  {v};")
    if directed:
        for u, v in orientation.sorted_arcs():
            lines.append(f"  {u} -> {v};")
    else:
        for u, v in g.sorted_edges():
            lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
