"""Hand-encoded fixed instances: the non-convex ring counterexample and the small K4-substitution example."""

from __future__ import annotations

from .coloring import Coloring
from .graph import Graph
from .polyomino import (
    BACKSLASH,
    SLASH,
    Polyomino,
    Triangulation,
    corner_ids,
    k4_substitution,
)
from .semitrans import Orientation

# 3x3 block of cells without the centre and without the bottom-right cell
RING_CELLS = [(0, 0), (1, 0), (0, 1), (0, 2), (1, 2), (2, 1), (2, 2)]

RING_DIAGONALS = {
    (0, 0): BACKSLASH,
    (0, 1): BACKSLASH,
    (0, 2): BACKSLASH,
    (1, 0): BACKSLASH,
    (1, 2): BACKSLASH,
    (2, 1): SLASH,
    (2, 2): BACKSLASH,
}

# corner (x, y) -> colour, as printed next to the oriented drawing
RING_COLORS = {
    (0, 3): 1, (1, 3): 2, (2, 3): 3, (3, 3): 1,
    (0, 2): 2, (1, 2): 3, (2, 2): 1, (3, 2): 2,
    (0, 1): 3, (1, 1): 1, (2, 1): 4, (3, 1): 1,
    (0, 0): 1, (1, 0): 2, (2, 0): 3,
}

# the drawn arcs, corner -> corner
RING_ARCS = [
    ((1, 0), (0, 1)), ((0, 0), (1, 0)), ((0, 0), (0, 1)), ((1, 1), (1, 0)),
    ((1, 0), (2, 0)), ((1, 1), (2, 0)), ((1, 1), (2, 1)), ((2, 1), (2, 0)),
    ((3, 1), (2, 1)), ((3, 1), (3, 2)), ((1, 1), (0, 1)), ((0, 2), (0, 1)),
    ((0, 2), (1, 2)), ((1, 1), (0, 2)), ((1, 1), (1, 2)), ((2, 2), (1, 2)),
    ((2, 2), (2, 1)), ((2, 2), (3, 2)), ((3, 2), (2, 1)), ((0, 3), (0, 2)),
    ((0, 3), (1, 2)), ((0, 3), (1, 3)), ((1, 3), (1, 2)), ((1, 3), (2, 3)),
    ((2, 2), (1, 3)), ((2, 2), (2, 3)), ((3, 2), (2, 3)), ((3, 3), (3, 2)),
    ((3, 3), (2, 3)),
]


def ring_polyomino() -> Polyomino:
    return Polyomino.of(RING_CELLS)


def ring_triangulation() -> Triangulation:
    return Triangulation(ring_polyomino(), RING_DIAGONALS)


def ring_coloring() -> Coloring:
    ids = corner_ids(ring_polyomino())
    return Coloring({ids[c]: col for c, col in RING_COLORS.items()})


def ring_drawn_orientation() -> Orientation:
    from .polyomino import triangulation_graph

    g = triangulation_graph(ring_triangulation())
    ids = corner_ids(ring_polyomino())
    return Orientation(g, frozenset((ids[a], ids[b]) for a, b in RING_ARCS))


# Five cells: two in the bottom row, three in the row above
K4_EXAMPLE_CELLS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]

# unit segments of the drawn K4-substituted example, corner -> corner
K4_EXAMPLE_SEGMENTS = (
    [((x, 0), (x + 1, 0)) for x in range(2)]
    + [((x, 1), (x + 1, 1)) for x in range(3)]
    + [((x, 2), (x + 1, 2)) for x in range(3)]
    + [((x, y), (x, y + 1)) for x in range(3) for y in range(2)]
    + [((3, 1), (3, 2))]
    + [((0, 0), (1, 1)), ((1, 1), (2, 2)), ((1, 0), (2, 1)), ((2, 1), (3, 2)), ((0, 1), (1, 2))]
    + [((0, 2), (1, 1)), ((1, 1), (2, 0)), ((1, 2), (2, 1)), ((2, 2), (3, 1)), ((0, 1), (1, 0))]
)


def k4_example_polyomino() -> Polyomino:
    return Polyomino.of(K4_EXAMPLE_CELLS)


def k4_example_drawn_graph() -> Graph:
    ids = corner_ids(k4_example_polyomino())
    return Graph.build(range(len(ids)), ((ids[a], ids[b]) for a, b in K4_EXAMPLE_SEGMENTS))


def k4_example_graph() -> Graph:
    return k4_substitution(k4_example_polyomino())
