"""Polyominoes, their grid graphs and triangulations, K4 substitution.

Cells are lattice points ``(x, y)`` naming the lower-left corner of a unit
square, x to the right and y upward. Graph vertices are the cell corners,
numbered row by row from the top-left corner (so a 2x2 block of cells gets
ids 0..8 in the reading order used for T1 and T2).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Mapping

from .graph import Graph
from .semitrans import Orientation

Cell = tuple[int, int]
Corner = tuple[int, int]

SLASH = "/"  # bottom-left to top-right
BACKSLASH = "\\"  # top-left to bottom-right
DIAGONALS = (SLASH, BACKSLASH)

DEFAULT_MAX_CELLS = 24


class PolyominoError(ValueError):
    pass


class TooManyCells(RuntimeError):
    pass


@dataclass(frozen=True)
class Polyomino:
    cells: frozenset[Cell]

    def __post_init__(self) -> None:
        cells = frozenset((int(x), int(y)) for x, y in self.cells)
        if not cells:
            raise PolyominoError("a polyomino has at least one cell")
        if not _connected(cells):
            raise PolyominoError("cells are not edge-connected")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def of(cls, cells: Iterable[Cell]) -> "Polyomino":
        return cls(frozenset(cells))

    @classmethod
    def rectangle(cls, width: int, height: int) -> "Polyomino":
        return cls(frozenset((x, y) for x in range(width) for y in range(height)))

    def __len__(self) -> int:
        return len(self.cells)

    def bounding_box(self) -> tuple[Cell, Cell]:
        xs = [x for x, _ in self.cells]
        ys = [y for _, y in self.cells]
        return (min(xs), min(ys)), (max(xs), max(ys))

    def is_rectangle(self) -> bool:
        (x0, y0), (x1, y1) = self.bounding_box()
        return len(self.cells) == (x1 - x0 + 1) * (y1 - y0 + 1)

    def normalized(self) -> "Polyomino":
        (x0, y0), _ = self.bounding_box()
        return Polyomino(frozenset((x - x0, y - y0) for x, y in self.cells))

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def corners(self) -> list[Corner]:
        pts = {(x + dx, y + dy) for x, y in self.cells for dx in (0, 1) for dy in (0, 1)}
        return sorted(pts, key=lambda p: (-p[1], p[0]))

    def to_ascii(self) -> str:
        (x0, y0), (x1, y1) = self.bounding_box()
        rows = []
        for y in range(y1, y0 - 1, -1):
            rows.append("".join("#" if (x, y) in self.cells else "." for x in range(x0, x1 + 1)))
        return "\n".join(rows) + "\n"


def _connected(cells: frozenset[Cell]) -> bool:
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def _contiguous(values: Iterable[int]) -> bool:
    vs = sorted(values)
    return vs[-1] - vs[0] + 1 == len(vs)


def is_row_convex(p: Polyomino) -> bool:
    rows: dict[int, list[int]] = {}
    for x, y in p.cells:
        rows.setdefault(y, []).append(x)
    return all(_contiguous(xs) for xs in rows.values())


def is_column_convex(p: Polyomino) -> bool:
    cols: dict[int, list[int]] = {}
    for x, y in p.cells:
        cols.setdefault(x, []).append(y)
    return all(_contiguous(ys) for ys in cols.values())


def is_convex(p: Polyomino) -> bool:
    return is_row_convex(p) and is_column_convex(p)


def _grid_segments(cells: Iterable[Cell]) -> set[tuple[Corner, Corner]]:
    segs = set()
    for x, y in cells:
        segs.add(((x, y), (x + 1, y)))
        segs.add(((x, y + 1), (x + 1, y + 1)))
        segs.add(((x, y), (x, y + 1)))
        segs.add(((x + 1, y), (x + 1, y + 1)))
    return segs


def corner_ids(p: Polyomino) -> dict[Corner, int]:
    return {c: i for i, c in enumerate(p.corners())}


def grid_graph(p: Polyomino) -> tuple[Graph, dict[Corner, int]]:
    """Corners as vertices, unit cell sides as edges; also returns corner -> id."""
    ids = corner_ids(p)
    edges = [(ids[a], ids[b]) for a, b in _grid_segments(p.cells)]
    return Graph.build(range(len(ids)), edges), ids


def _diagonal(cell: Cell, d: str) -> tuple[Corner, Corner]:
    x, y = cell
    if d == SLASH:
        return (x, y), (x + 1, y + 1)
    return (x, y + 1), (x + 1, y)


@dataclass(frozen=True)
class Triangulation:
    base: Polyomino
    diag: Mapping[Cell, str]

    def __post_init__(self) -> None:
        diag = {(int(x), int(y)): d for (x, y), d in dict(self.diag).items()}
        if set(diag) != set(self.base.cells):
            raise PolyominoError("diagonal choices must cover exactly the polyomino's cells")
        bad = [d for d in diag.values() if d not in DIAGONALS]
        if bad:
            raise PolyominoError(f"unknown diagonal symbol {bad[0]!r}")
        object.__setattr__(self, "diag", diag)

    def __hash__(self) -> int:
        return hash((self.base, tuple(sorted(self.diag.items()))))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.base == other.base
            and dict(self.diag) == dict(other.diag)
        )

    def to_ascii(self) -> str:
        (x0, y0), (x1, y1) = self.base.bounding_box()
        rows = []
        for y in range(y1, y0 - 1, -1):
            rows.append("".join(self.diag.get((x, y), ".") for x in range(x0, x1 + 1)))
        return "\n".join(rows) + "\n"

    def normalized(self) -> "Triangulation":
        (x0, y0), _ = self.base.bounding_box()
        return Triangulation(
            self.base.normalized(), {(x - x0, y - y0): d for (x, y), d in self.diag.items()}
        )

    def key(self) -> tuple:
        """Translation-invariant identity of the diagonal pattern."""
        t = self.normalized()
        return tuple(sorted(t.diag.items()))


def square_pattern(tl: str, tr: str, bl: str, br: str) -> Triangulation:
    """Triangulation of the 2x2 block of cells from its four diagonals."""
    return Triangulation(
        Polyomino.rectangle(2, 2), {(0, 1): tl, (1, 1): tr, (0, 0): bl, (1, 0): br}
    )


def enumerate_triangulations(p: Polyomino, max_cells: int = DEFAULT_MAX_CELLS) -> Iterator[Triangulation]:
    """All 2**|cells| triangulations; cells in sorted order, "/" before "\\", first cell slowest."""
    if len(p.cells) > max_cells:
        raise TooManyCells(f"{len(p.cells)} cells exceeds the enumeration bound {max_cells}")
    cells = p.sorted_cells()
    return (Triangulation(p, dict(zip(cells, choice))) for choice in product(DIAGONALS, repeat=len(cells)))


def triangulation_graph(t: Triangulation, with_ids: bool = False):
    g, ids = grid_graph(t.base)
    extra = []
    for cell, d in t.diag.items():
        a, b = _diagonal(cell, d)
        extra.append((ids[a], ids[b]))
    g = g.with_edges(extra)
    return (g, ids) if with_ids else g


def rotate(t: Triangulation) -> Triangulation:
    """Quarter turn: (x, y) -> (y, max_x - x) on cells; "/" and "\\" swap."""
    (_, _), (x1, _) = t.base.bounding_box()
    diag = {}
    for (x, y), d in t.diag.items():
        diag[(y, x1 - x)] = BACKSLASH if d == SLASH else SLASH
    return Triangulation(Polyomino.of(diag), diag).normalized()


T1_PATTERN = square_pattern(SLASH, BACKSLASH, SLASH, SLASH)
T2_PATTERN = square_pattern(BACKSLASH, SLASH, BACKSLASH, BACKSLASH)


@dataclass(frozen=True)
class ForbiddenSet:
    patterns: tuple[Triangulation, ...]

    def keys(self) -> set[tuple[str, str, str, str]]:
        return {_window_key(t, 0, 0) for t in self.patterns}

    def graphs(self) -> list[Graph]:
        return [triangulation_graph(t) for t in self.patterns]

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)


def forbidden_set() -> ForbiddenSet:
    """T1, T2 and their rotations by 90, 180 and 270 degrees."""
    out = []
    for t in (T1_PATTERN, T2_PATTERN):
        cur = t
        for _ in range(4):
            out.append(cur)
            cur = rotate(cur)
    return ForbiddenSet(tuple(out))


def _window_key(t: Triangulation, x: int, y: int) -> tuple[str, str, str, str]:
    d = t.diag
    return (d[(x, y + 1)], d[(x + 1, y + 1)], d[(x, y)], d[(x + 1, y)])


_FORBIDDEN_KEYS: set | None = None


def forbidden_windows(t: Triangulation) -> list[Cell]:
    """Lower-left cells of 2x2 blocks whose diagonals match a member of the forbidden set."""
    global _FORBIDDEN_KEYS
    if _FORBIDDEN_KEYS is None:
        _FORBIDDEN_KEYS = forbidden_set().keys()
    cells = t.base.cells
    hits = []
    for x, y in sorted(cells):
        block = ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))
        if all(c in cells for c in block) and _window_key(t, x, y) in _FORBIDDEN_KEYS:
            hits.append((x, y))
    return hits


def contains_forbidden(t: Triangulation) -> bool:
    return bool(forbidden_windows(t))


def k4_substitution(p: Polyomino, with_ids: bool = False):
    """Grid graph of ``p`` with both diagonals added in every cell."""
    g, ids = grid_graph(p)
    extra = []
    for cell in p.cells:
        for d in DIAGONALS:
            a, b = _diagonal(cell, d)
            extra.append((ids[a], ids[b]))
    g = g.with_edges(extra)
    return (g, ids) if with_ids else g


def k4_canonical_orientation(p: Polyomino, column_aligned: bool = False) -> Orientation:
    """Orientation of the K4-substituted polyomino by alternating horizontal sources.

    In the bounding grid, a corner in row r (0 = top) and column c is a
    horizontal source when r + c is even and a horizontal sink otherwise;
    vertical and diagonal edges point to the lower row. ``column_aligned``
    instead makes every even column a source column (this variant has
    shortcuts and exists for comparison).
    """
    g, ids = k4_substitution(p, with_ids=True)
    (x0, _), (_, y1) = p.bounding_box()
    top = y1 + 1
    pos = {v: c for c, v in ids.items()}

    def source(corner: Corner) -> bool:
        x, y = corner
        r, c = top - y, x - x0
        return (c % 2 == 0) if column_aligned else ((r + c) % 2 == 0)

    arcs = []
    for u, v in g.edges:
        uy, vy = pos[u][1], pos[v][1]
        if uy == vy:
            arcs.append((u, v) if source(pos[u]) else (v, u))
        else:
            arcs.append((u, v) if uy > vy else (v, u))
    return Orientation(g, frozenset(arcs))


def strip_polyomino(n: int) -> Polyomino:
    """Vertical strip of ``n - 1`` cells: its grid graph is the n x 2 grid (n >= 2)."""
    if n < 2:
        raise PolyominoError("a strip needs at least two rows of corners")
    return Polyomino.of((0, y) for y in range(n - 1))


def strip_k4_graph(n: int) -> Graph:
    """The K4-substituted n x 2 grid graph; for n = 1 a single edge."""
    if n == 1:
        return Graph.build((0, 1), [(0, 1)])
    return k4_substitution(strip_polyomino(n))


def enumerate_polyominoes(max_cells: int) -> list[Polyomino]:
    """All fixed polyominoes with 1..max_cells cells, translated to touch both axes."""
    found: list[Polyomino] = []
    level = {frozenset({(0, 0)})}
    for size in range(1, max_cells + 1):
        found.extend(Polyomino(c) for c in sorted(level, key=sorted))
        if size == max_cells:
            break
        nxt = set()
        for cells in level:
            for x, y in cells:
                for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if nb not in cells:
                        grown = cells | {nb}
                        mx = min(a for a, _ in grown)
                        my = min(b for _, b in grown)
                        nxt.add(frozenset((a - mx, b - my) for a, b in grown))
        level = nxt
    return found


def enumerate_convex_polyominoes(max_cells: int) -> list[Polyomino]:
    return [p for p in enumerate_polyominoes(max_cells) if is_convex(p)]


def parse_polyomino(text: str, source: str = "<input>") -> Polyomino:
    """Read '#'/'.' rows, top line = highest row."""
    rows = [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if not rows:
        raise PolyominoError(f"{source}: no rows")
    cells = set()
    height = len(rows)
    for i, (lineno, row) in enumerate(rows):
        for j, ch in enumerate(row.rstrip()):
            if ch == "#":
                cells.add((j, height - 1 - i))
            elif ch != ".":
                raise PolyominoError(f"{source}:{lineno}:{j + 1}: unexpected character {ch!r}")
    if not cells:
        raise PolyominoError(f"{source}: no cells")
    try:
        return Polyomino(frozenset(cells))
    except PolyominoError as exc:
        raise PolyominoError(f"{source}: {exc}") from None


def parse_triangulation(text: str, source: str = "<input>") -> Triangulation:
    """Read '/', '\\' and '.' rows, top line = highest row."""
    rows = [(k + 1, ln) for k, ln in enumerate(text.splitlines()) if ln.strip()]
    if not rows:
        raise PolyominoError(f"{source}: no rows")
    diag = {}
    height = len(rows)
    for i, (lineno, row) in enumerate(rows):
        for j, ch in enumerate(row.rstrip()):
            if ch in DIAGONALS:
                diag[(j, height - 1 - i)] = ch
            elif ch != ".":
                raise PolyominoError(f"{source}:{lineno}:{j + 1}: unexpected character {ch!r}")
    if not diag:
        raise PolyominoError(f"{source}: no cells")
    try:
        return Triangulation(Polyomino.of(diag), diag)
    except PolyominoError as exc:
        raise PolyominoError(f"{source}: {exc}") from None
