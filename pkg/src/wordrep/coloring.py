"""Exact k-colouring and the row-by-row greedy colouring of grid triangulations."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterator

from .graph import Graph

if TYPE_CHECKING:
    from .polyomino import Triangulation


class ColoringError(ValueError):
    pass


class UnclassifiedConflict(RuntimeError):
    """Colour 4 was needed in a configuration matching none of C1, C2, C3."""


@dataclass(frozen=True)
class Coloring(Mapping):
    """Vertex -> colour (positive integer). Behaves as a read-only mapping."""

    colors: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        colors = {int(v): int(c) for v, c in self.colors.items()}
        if any(c < 1 for c in colors.values()):
            raise ColoringError("colours are positive integers")
        object.__setattr__(self, "colors", colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def is_proper(self, g: Graph) -> bool:
        if set(self.colors) != set(g.vertices):
            return False
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)

    def check(self, g: Graph) -> "Coloring":
        for v in g.vertices:
            if v not in self.colors:
                raise ColoringError(f"vertex {v} is uncoloured")
        for u, v in g.sorted_edges():
            if self.colors[u] == self.colors[v]:
                raise ColoringError(f"edge ({u}, {v}) is monochromatic (colour {self.colors[u]})")
        return self

    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def to_json(self) -> dict:
        return {"colors": {str(v): c for v, c in sorted(self.colors.items())}}

    @classmethod
    def from_json(cls, data: Mapping) -> "Coloring":
        try:
            raw = data["colors"]
            return cls({int(v): int(c) for v, c in raw.items()})
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ColoringError(f"malformed colouring JSON: {exc}") from None


def is_k_colorable(g: Graph, k: int) -> Coloring | None:
    """A proper colouring with colours ``1..k``, or None if none exists.

    Exhaustive backtracking in DSATUR order; a vertex may only open colour
    ``c + 1`` when ``c`` is the largest colour used so far.
    """
    if k < 1:
        raise ColoringError("k must be at least 1")
    n = g.n
    if n == 0:
        return Coloring({})
    adj = g.adjacency_masks
    color = [0] * n

    def pick() -> int:
        best, best_key = -1, None
        for v in range(n):
            if color[v]:
                continue
            sat = len({color[w] for w in _bits(adj[v]) if color[w]})
            key = (sat, bin(adj[v]).count("1"), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        return best

    def rec(done: int, used: int) -> bool:
        if done == n:
            return True
        v = pick()
        taken = {color[w] for w in _bits(adj[v])}
        for c in range(1, min(used + 1, k) + 1):
            if c in taken:
                continue
            color[v] = c
            if rec(done + 1, max(used, c)):
                return True
        color[v] = 0
        return False

    if not rec(0, 0):
        return None
    verts = g.vertices
    return Coloring({verts[i]: color[i] for i in range(n)})


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ConflictCase:
    """First vertex that needs colour 4 during the greedy procedure.

    ``window`` maps the roles ``left``, ``up_left``, ``up``, ``up_right`` to
    ``(vertex, colour)`` for the already coloured neighbours of ``vertex``;
    ``adjacent`` lists which of those roles are actually joined to it.
    """

    vertex: int
    row: int  # 1-based, from the top
    column: int  # 1-based, from the left
    case_tag: str
    window: dict[str, tuple[int, int]]
    adjacent: tuple[str, ...]
    partial: Coloring


@dataclass(frozen=True)
class GreedyOutcome:
    coloring: Coloring | None = None
    conflict: ConflictCase | None = None

    @property
    def complete(self) -> bool:
        return self.coloring is not None


def _classify(colors: dict[str, int], adjacent: set[str]) -> str | None:
    left, up = colors.get("left"), colors.get("up")
    ul, ur = colors.get("up_left"), colors.get("up_right")
    if "up_left" in adjacent:
        # left, up-left, up form a path; all three distinct: C1
        if left != up:
            return "C1"
        # left and up share a colour: the up-right neighbour supplies the third
        if "up_right" in adjacent and len({left, ul, ur}) == 3:
            return "C2"
        return None
    if "up_right" in adjacent and len({left, up, ur}) == 3:
        return "C3"
    return None


def greedy_row_coloring(t: "Triangulation") -> GreedyOutcome:
    """Colour a rectangle triangulation row by row, reporting the first need for colour 4.

    The top-left vertex gets colour 1 and the vertex below it colour 2; the
    rest of the top two rows is then forced cell by cell. Later rows are
    coloured left to right with the smallest colour in {1, 2, 3} not used by
    an already coloured neighbour.
    """
    from .polyomino import triangulation_graph

    base = t.base
    if not base.is_rectangle():
        raise ColoringError("greedy row colouring needs a full rectangle of cells")
    (x0, y0), (x1, y1) = base.bounding_box()  # cells x0..x1, y0..y1
    g, ids = triangulation_graph(t, with_ids=True)
    width = x1 - x0 + 2  # corners per row
    height = y1 - y0 + 2
    top = y1 + 1

    def vid(r: int, c: int) -> int:
        # r, c zero-based from the top-left corner
        return ids[(x0 + c, top - r)]

    color: dict[int, int] = {vid(0, 0): 1, vid(1, 0): 2}
    for c in range(width - 1):
        cell = (x0 + c, top - 1)
        a, b = vid(0, c), vid(1, c)  # known
        tr, br = vid(0, c + 1), vid(1, c + 1)
        third = ({1, 2, 3} - {color[a], color[b]}).pop()
        if t.diag[cell] == "/":
            # bottom-left joins top-right: triangles (a, b, tr) and (b, tr, br)
            color[tr] = third
            color[br] = color[a]
        else:
            # top-left joins bottom-right: triangles (a, b, br) and (a, tr, br)
            color[br] = third
            color[tr] = color[b]

    adj = g.adjacency
    for r in range(2, height):
        for c in range(width):
            v = vid(r, c)
            roles = {"up": vid(r - 1, c)}
            if c > 0:
                roles["left"] = vid(r, c - 1)
                roles["up_left"] = vid(r - 1, c - 1)
            if c + 1 < width:
                roles["up_right"] = vid(r - 1, c + 1)
            taken = {color[w] for w in adj[v] if w in color}
            free = [k for k in (1, 2, 3) if k not in taken]
            if free:
                color[v] = free[0]
                continue
            adjacent = {role for role, w in roles.items() if w in adj[v]}
            window = {role: (w, color[w]) for role, w in roles.items()}
            tag = _classify({role: col for role, (_, col) in window.items()}, adjacent)
            if tag is None:
                raise UnclassifiedConflict(
                    f"colour 4 needed at row {r + 1}, column {c + 1} in an unrecognised window {window}"
                )
            return GreedyOutcome(
                conflict=ConflictCase(
                    vertex=v,
                    row=r + 1,
                    column=c + 1,
                    case_tag=tag,
                    window=window,
                    adjacent=tuple(sorted(adjacent)),
                    partial=Coloring(dict(color)),
                )
            )
    result = Coloring(color).check(g)
    return GreedyOutcome(coloring=result)
