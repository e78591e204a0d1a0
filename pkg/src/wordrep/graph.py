"""Undirected simple graphs with induced-subgraph queries.

Vertices are small non-negative integers. Most graphs built by this package
use the dense range ``0..n-1``, but any set of ids is allowed (words over the
alphabet ``{1, 2, 3, 4}`` produce graphs on exactly those letters).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Raised when a graph or vertex subset violates its invariants."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        if any(v < 0 for v in verts):
            raise GraphError("vertex ids must be non-negative")
        vset = set(verts)
        edges = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside the vertex set")
            edges.add(_norm(u, v))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edges))

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        return cls(tuple(vertices), frozenset(tuple(e) for e in edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    @cached_property
    def index(self) -> dict[int, int]:
        """Vertex id -> position in ``vertices`` (dense index)."""
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Bitset adjacency over dense indices."""
        idx = self.index
        masks = [0] * self.n
        for u, v in self.edges:
            masks[idx[u]] |= 1 << idx[v]
            masks[idx[v]] |= 1 << idx[u]
        return tuple(masks)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        """Rename vertices through an injective ``mapping``."""
        if len(set(mapping[v] for v in self.vertices)) != self.n:
            raise GraphError("relabelling is not injective")
        return Graph.build(
            (mapping[v] for v in self.vertices),
            ((mapping[u], mapping[v]) for u, v in self.edges),
        )

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph.build(self.vertices, list(self.edges) + list(extra))

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        drop = {_norm(u, v) for u, v in removed}
        return Graph.build(self.vertices, (e for e in self.edges if e not in drop))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def graph_from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on ``0..n-1``; duplicate pairs collapse, loops and bad endpoints raise."""
    pairs = []
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        pairs.append((u, v))
    return Graph.build(range(n), pairs)


def induced_subgraph(g: Graph, subset: Iterable[int]) -> Graph:
    s = set(subset)
    missing = s.difference(g.vertices)
    if missing:
        raise GraphError(f"vertices {sorted(missing)} not in graph")
    return Graph.build(s, (e for e in g.edges if e[0] in s and e[1] in s))


def contains_induced(host: Graph, pattern: Graph) -> dict[int, int] | None:
    """Find an injective map ``pattern -> host`` preserving edges and non-edges.

    Plain backtracking. Pattern vertices are placed in a connectivity-first,
    high-degree-first order; host candidates are pruned by degree and by
    consistency with every already placed pattern vertex.
    """
    if pattern.n > host.n:
        return None
    if pattern.n == 0:
        return {}

    order = _match_order(pattern)
    hadj = host.adjacency
    padj = pattern.adjacency
    hdeg = {v: len(hadj[v]) for v in host.vertices}
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def candidates(p: int) -> Iterable[int]:
        placed_nbrs = [mapping[q] for q in padj[p] if q in mapping]
        if placed_nbrs:
            pool = set(hadj[placed_nbrs[0]])
            for h in placed_nbrs[1:]:
                pool &= hadj[h]
            return sorted(pool)
        return host.vertices

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        need = len(padj[p])
        for h in candidates(p):
            if h in used or hdeg[h] < need:
                continue
            ok = True
            for q, hq in mapping.items():
                if (q in padj[p]) != (hq in hadj[h]):
                    ok = False
                    break
            if not ok:
                continue
            mapping[p] = h
            used.add(h)
            if extend(i + 1):
                return True
            del mapping[p]
            used.discard(h)
        return False

    return dict(mapping) if extend(0) else None


def _match_order(pattern: Graph) -> list[int]:
    adj = pattern.adjacency
    remaining = set(pattern.vertices)
    order: list[int] = []
    while remaining:
        start = max(sorted(remaining), key=lambda v: len(adj[v]))
        order.append(start)
        remaining.discard(start)
        frontier = True
        while frontier:
            frontier = False
            best = None
            best_key = None
            for v in sorted(remaining):
                links = sum(1 for u in adj[v] if u not in remaining)
                if links == 0:
                    continue
                key = (links, len(adj[v]))
                if best_key is None or key > best_key:
                    best, best_key = v, key
            if best is not None:
                order.append(best)
                remaining.discard(best)
                frontier = True
    return order


def is_induced_embedding(host: Graph, pattern: Graph, mapping: Mapping[int, int]) -> bool:
    """Edge-by-edge re-check of a mapping returned by :func:`contains_induced`."""
    if set(mapping) != set(pattern.vertices):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    verts = pattern.vertices
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if pattern.has_edge(u, v) != host.has_edge(mapping[u], mapping[v]):
                return False
    return True


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, ((i, i + 1) for i in range(n - 1)))


def wheel_graph(rim: int) -> Graph:
    """Wheel with hub ``0`` and a rim cycle on ``1..rim``."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return graph_from_edges(rim + 1, edges)


# The reference labelling numbers vertices 1..9 row by row from the top-left; ids here are label - 1.
_GRID_3x3 = [(1, 2), (2, 3), (4, 5), (5, 6), (7, 8), (8, 9), (1, 4), (4, 7), (2, 5), (5, 8), (3, 6), (6, 9)]
T1_EDGES = [(a - 1, b - 1) for a, b in _GRID_3x3 + [(2, 4), (2, 6), (5, 7), (6, 8)]]
T2_EDGES = [(a - 1, b - 1) for a, b in _GRID_3x3 + [(1, 5), (5, 9), (4, 8), (3, 5)]]


def t1_graph() -> Graph:
    return graph_from_edges(9, T1_EDGES)


def t2_graph() -> Graph:
    return graph_from_edges(9, T2_EDGES)
