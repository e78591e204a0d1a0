"""Semi-transitive orientations: verification and an exhaustive solver.

An orientation is semi-transitive when it is acyclic and has no shortcut: a
directed path ``v1 -> ... -> vk`` (k >= 4) together with the arc ``v1 -> vk``
where some pair ``vi, vj`` (i < j) is not joined by the arc ``vi -> vj``.

In an acyclic orientation a missing arc ``vi -> vj`` can only mean that
``vi`` and ``vj`` are not adjacent at all (the reverse arc would close a
cycle with the path). The same test is therefore valid on partial
orientations: a path of oriented arcs with an oriented closing arc and a
non-adjacent pair is a violation that no completion can repair.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .coloring import ColoringError
from .graph import Graph

DEFAULT_BUDGET = 10_000_000
BUDGET_ENV = "WORDREP_BUDGET"


class OrientationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """The solver visited more search nodes than allowed."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV} must be positive")
    return value


# ---------------------------------------------------------------------------
# Orientation and witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """Directions on (some of) the edges of ``base``; ``(u, v)`` in arcs means u -> v."""

    base: Graph
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not self.base.has_edge(u, v):
                raise OrientationError(f"arc ({u}, {v}) is not an edge of the base graph")
            if (v, u) in arcs:
                raise OrientationError(f"edge ({u}, {v}) oriented both ways")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, vertices: Iterable[int], arcs: Iterable[tuple[int, int]]) -> "Orientation":
        """Total orientation whose base graph is the underlying graph of ``arcs``."""
        arcs = [tuple(a) for a in arcs]
        return cls(Graph.build(vertices, arcs), frozenset(arcs))

    @property
    def is_total(self) -> bool:
        return len(self.arcs) == self.base.m

    def direction(self, u: int, v: int) -> int:
        """+1 if u -> v, -1 if v -> u, 0 if the edge is unset."""
        if (u, v) in self.arcs:
            return 1
        if (v, u) in self.arcs:
            return -1
        if not self.base.has_edge(u, v):
            raise OrientationError(f"({u}, {v}) is not an edge")
        return 0

    def unset_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.base.sorted_edges() if e not in self.arcs and e[::-1] not in self.arcs]

    def with_arcs(self, arcs: Iterable[tuple[int, int]]) -> "Orientation":
        return Orientation(self.base, self.arcs | frozenset(tuple(a) for a in arcs))

    def successors(self, v: int) -> list[int]:
        return sorted(b for a, b in self.arcs if a == v)

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)


@dataclass(frozen=True)
class Shortcut:
    """A directed path whose first vertex has an arc to its last, with a non-transitive pair."""

    path: tuple[int, ...]
    missing: tuple[int, int]

    def is_valid(self, o: Orientation) -> bool:
        p = self.path
        if len(p) < 4 or len(set(p)) != len(p):
            return False
        if any((a, b) not in o.arcs for a, b in zip(p, p[1:])):
            return False
        if (p[0], p[-1]) not in o.arcs:
            return False
        a, b = self.missing
        if a not in p or b not in p or p.index(a) >= p.index(b):
            return False
        return (a, b) not in o.arcs


@dataclass(frozen=True)
class Verdict:
    status: str  # "ok" | "cyclic" | "shortcut"
    cycle: tuple[int, ...] | None = None
    shortcut: Shortcut | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def reverse(o: Orientation) -> Orientation:
    if not o.is_total:
        raise OrientationError("reverse expects a total orientation")
    return Orientation(o.base, frozenset((v, u) for u, v in o.arcs))


# ---------------------------------------------------------------------------
# Bitset engine shared by the verifier and the solver (dense vertex indices)
# ---------------------------------------------------------------------------


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _topo_or_cycle(n: int, out: Sequence[int]) -> tuple[list[int] | None, list[int] | None]:
    """Kahn's algorithm. Returns (order, None) or (None, cycle)."""
    indeg = [0] * n
    for v in range(n):
        for w in _bits(out[v]):
            indeg[w] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in _bits(out[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) == n:
        return order, None
    # every leftover vertex has an in-arc from another leftover vertex: walk backwards
    left = 0
    for v in range(n):
        if indeg[v] > 0:
            left |= 1 << v
    preds: dict[int, int] = {}
    for u in _bits(left):
        for w in _bits(out[u] & left):
            preds.setdefault(w, u)
    v = next(_bits(left))
    seen: dict[int, int] = {}
    walk = []
    while v not in seen:
        seen[v] = len(walk)
        walk.append(v)
        v = preds[v]
    cycle = walk[seen[v]:]
    cycle.reverse()
    return None, cycle


def _descendants(n: int, out: Sequence[int], order: Sequence[int]) -> list[int]:
    desc = [0] * n
    for v in reversed(order):
        d = 0
        for w in _bits(out[v]):
            d |= (1 << w) | desc[w]
        desc[v] = d
    return desc


def _path_between(src: int, dst: int, out: Sequence[int], allowed: int) -> list[int]:
    """Some directed path src -> ... -> dst using vertices in ``allowed`` (plus dst)."""
    allowed |= 1 << dst
    parent = {src: -1}
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for w in _bits(out[v] & allowed):
                if w not in parent:
                    parent[w] = v
                    if w == dst:
                        path = [w]
                        while parent[path[-1]] != -1:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    nxt.append(w)
        frontier = nxt
    raise AssertionError("no path although reachability said so")


def _shortcut_on_arc(
    x: int, y: int, out: Sequence[int], adj: Sequence[int], desc: Sequence[int]
) -> tuple[list[int], tuple[int, int]] | None:
    """Look for a shortcut closed by the arc x -> y.

    Walks chains x = c0 -> c1 -> ... whose vertices are pairwise adjacent
    (in an acyclic orientation such a chain is a transitive tournament). The
    first vertex w that breaks the clique property yields a shortcut as soon
    as w can still reach y; reaching y itself through a clique chain is fine.
    """
    ybit = 1 << y
    toward = ybit
    for v in _bits(desc[x]):
        if desc[v] & ybit:
            toward |= 1 << v

    stack: list[tuple[list[int], int]] = [([x], 1 << x)]
    while stack:
        chain, cmask = stack.pop()
        last = chain[-1]
        for w in _bits(out[last] & toward & ~cmask):
            clique = (adj[w] & cmask) == cmask
            if w == y:
                if not clique:
                    bad = next(c for c in chain if not adj[w] >> c & 1)
                    return chain + [y], (bad, y)
                continue
            if clique:
                stack.append((chain + [w], cmask | (1 << w)))
            else:
                bad = next(c for c in chain if not adj[w] >> c & 1)
                tail = _path_between(w, y, out, toward)
                return chain + tail, (bad, w)
    return None


def _dense_masks(o: Orientation) -> tuple[list[int], list[int]]:
    idx = o.base.index
    out = [0] * o.base.n
    for u, v in o.arcs:
        out[idx[u]] |= 1 << idx[v]
    return out, list(o.base.adjacency_masks)


def _require_total(o: Orientation) -> None:
    if not o.is_total:
        raise OrientationError(
            f"orientation is partial: {o.base.m - len(o.arcs)} edge(s) unset"
        )


def find_cycle(o: Orientation) -> tuple[int, ...] | None:
    out, _ = _dense_masks(o)
    _, cycle = _topo_or_cycle(o.base.n, out)
    if cycle is None:
        return None
    verts = o.base.vertices
    return tuple(verts[i] for i in cycle)


def is_acyclic(o: Orientation) -> bool:
    _require_total(o)
    return find_cycle(o) is None


def find_shortcut(o: Orientation) -> Shortcut | None:
    _require_total(o)
    out, adj = _dense_masks(o)
    n = o.base.n
    order, cycle = _topo_or_cycle(n, out)
    if order is None:
        raise OrientationError("find_shortcut needs an acyclic orientation")
    desc = _descendants(n, out, order)
    verts = o.base.vertices
    for x in range(n):
        for y in _bits(out[x]):
            hit = _shortcut_on_arc(x, y, out, adj, desc)
            if hit is not None:
                path, (a, b) = hit
                return Shortcut(tuple(verts[i] for i in path), (verts[a], verts[b]))
    return None


def is_semi_transitive(o: Orientation) -> Verdict:
    _require_total(o)
    cycle = find_cycle(o)
    if cycle is not None:
        return Verdict("cyclic", cycle=cycle)
    sc = find_shortcut(o)
    if sc is not None:
        return Verdict("shortcut", shortcut=sc)
    return Verdict("ok")


# ---------------------------------------------------------------------------
# Colour-driven orientations
# ---------------------------------------------------------------------------

_RANK_3 = {1: 0, 2: 1, 3: 2}
# 1->2, 1->3, 1->4, 2->3, 2->4, 4->3: orient along the order 1 < 2 < 4 < 3
_RANK_4 = {1: 0, 2: 1, 4: 2, 3: 3}


def _orient_by_rank(g: Graph, colors: Mapping[int, int], rank: Mapping[int, int]) -> Orientation:
    for v in g.vertices:
        if v not in colors:
            raise ColoringError(f"vertex {v} has no colour")
        if colors[v] not in rank:
            raise ColoringError(f"vertex {v} has colour {colors[v]} outside {sorted(rank)}")
    arcs = []
    for u, v in g.edges:
        if colors[u] == colors[v]:
            raise ColoringError(f"edge ({u}, {v}) joins two vertices of colour {colors[u]}")
        arcs.append((u, v) if rank[colors[u]] < rank[colors[v]] else (v, u))
    return Orientation(g, frozenset(arcs))


def orientation_from_3coloring(g: Graph, colors: Mapping[int, int]) -> Orientation:
    """Orient every edge from the lower colour class to the higher one (1 < 2 < 3)."""
    return _orient_by_rank(g, colors, _RANK_3)


def orientation_from_4coloring_rules(g: Graph, colors: Mapping[int, int]) -> Orientation:
    """Orient by the rules 1->2, 1->3, 1->4, 2->3, 2->4, 4->3. Not semi-transitive in general."""
    return _orient_by_rank(g, colors, _RANK_4)


# ---------------------------------------------------------------------------
# Search trace
# ---------------------------------------------------------------------------


def _fmt(vs: Iterable[int], labels: Mapping[int, str] | None) -> str:
    return " ".join(labels[v] if labels else str(v) for v in vs)


@dataclass(frozen=True)
class BranchEvent:
    arc: tuple[int, int]
    copy: str | None  # copy that receives the reversed arc; None for the symmetry seed
    tag = "B"

    def line(self, labels=None) -> str:
        s = f"B {_fmt(self.arc, labels)}"
        return s if self.copy else s + " (symmetry)"


@dataclass(frozen=True)
class NewCopyEvent:
    name: str
    arc: tuple[int, int]
    tag = "NPOC"

    def line(self, labels=None) -> str:
        return f"NPOC {self.name} {_fmt(self.arc, labels)}"


@dataclass(frozen=True)
class CompleteEvent:
    cycle: tuple[int, ...]
    forced: tuple[tuple[int, int], ...]
    tag = "C"

    def line(self, labels=None) -> str:
        arcs = ", ".join(f"{_fmt(a[:1], labels)}>{_fmt(a[1:], labels)}" for a in self.forced)
        return f"C {_fmt(self.cycle, labels)} | {arcs}"


@dataclass(frozen=True)
class ShortcutEvent:
    """Dead end. ``kind`` is "shortcut", "cycle" or "blocked" (a 3/4-cycle with no valid completion)."""

    kind: str
    vertices: tuple[int, ...]
    missing: tuple[int, int] | None = None
    tag = "S"

    def line(self, labels=None) -> str:
        s = f"S {_fmt(self.vertices, labels)}"
        if self.kind == "shortcut":
            return s + f" | missing {_fmt(self.missing, labels)}"
        return s + f" | {self.kind}"


@dataclass(frozen=True)
class MoveEvent:
    name: str
    tag = "MC"

    def line(self, labels=None) -> str:
        return f"MC {self.name}"


TraceEvent = Union[BranchEvent, NewCopyEvent, CompleteEvent, ShortcutEvent, MoveEvent]


@dataclass
class SearchTrace:
    events: list[TraceEvent] = field(default_factory=list)

    def lines(self, labels: Mapping[int, str] | None = None) -> list[str]:
        return [e.line(labels) for e in self.events]

    def text(self, labels: Mapping[int, str] | None = None) -> str:
        return "\n".join(self.lines(labels)) + ("\n" if self.events else "")

    def tags(self) -> list[str]:
        return [e.tag for e in self.events]


@dataclass
class SolveResult:
    outcome: str  # "oriented" | "impossible"
    orientation: Orientation | None
    trace: SearchTrace
    nodes: int

    @property
    def possible(self) -> bool:
        return self.outcome == "oriented"


@dataclass
class PropagationResult:
    orientation: Orientation
    conflict: str | None = None
    conflict_cycle: tuple[int, ...] | None = None

    @property
    def ok(self) -> bool:
        return self.conflict is None


# ---------------------------------------------------------------------------
# Local constraints: triangles and chordless 4-cycles
# ---------------------------------------------------------------------------


def _valid_patterns(length: int) -> list[tuple[int, ...]]:
    """Sign patterns (+1 = along the cycle order) allowed on a 3- or chordless 4-cycle."""
    good = []
    for signs in product((1, -1), repeat=length):
        if length == 3:
            ok = len(set(signs)) > 1  # otherwise a directed triangle
        else:
            # a run of three equal signs is a directed 3-path: it closes into a
            # directed 4-cycle or into a shortcut over a missing diagonal
            ok = not any(signs[i] == signs[(i + 1) % 4] == signs[(i + 2) % 4] for i in range(4))
        if ok:
            good.append(signs)
    return good


_PATTERNS = {3: _valid_patterns(3), 4: _valid_patterns(4)}


@dataclass(frozen=True)
class _Constraint:
    cycle: tuple[int, ...]  # dense indices in cyclic order
    edges: tuple[int, ...]  # edge index of (cycle[i], cycle[i+1])
    along: tuple[int, ...]  # +1 if the edge's stored low->high direction runs along the cycle


class _Engine:
    """Dense-index edge bookkeeping for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.adj = list(g.adjacency_masks)
        idx = g.index
        self.edges = sorted((idx[u], idx[v]) for u, v in g.edges)  # low < high, lexicographic
        self.edge_id = {e: i for i, e in enumerate(self.edges)}
        self.constraints: list[_Constraint] = []
        self._build_constraints()
        self.by_edge: list[list[int]] = [[] for _ in self.edges]
        for ci, c in enumerate(self.constraints):
            for e in c.edges:
                self.by_edge[e].append(ci)

    def _edge(self, a: int, b: int) -> tuple[int, int]:
        """(edge index, +1 if a < b)"""
        return (self.edge_id[(a, b)], 1) if a < b else (self.edge_id[(b, a)], -1)

    def _add(self, cycle: tuple[int, ...]) -> None:
        es, al = [], []
        for i, a in enumerate(cycle):
            e, s = self._edge(a, cycle[(i + 1) % len(cycle)])
            es.append(e)
            al.append(s)
        self.constraints.append(_Constraint(cycle, tuple(es), tuple(al)))

    def _build_constraints(self) -> None:
        adj = self.adj
        n = self.n
        for a in range(n):
            for b in _bits(adj[a] & ~((2 << a) - 1)):
                for c in _bits(adj[a] & adj[b] & ~((2 << b) - 1)):
                    self._add((a, b, c))
        # chordless 4-cycles a-b-c-d with a the smallest vertex, b < d
        for a in range(n):
            higher = ~((2 << a) - 1)
            for b in _bits(adj[a] & higher):
                for d in _bits(adj[a] & higher & ~((2 << b) - 1)):
                    if adj[b] >> d & 1:
                        continue
                    for c in _bits(adj[b] & adj[d] & higher):
                        if adj[a] >> c & 1:
                            continue
                        self._add((a, b, c, d))

    def arc_of(self, e: int, d: int) -> tuple[int, int]:
        lo, hi = self.edges[e]
        return (lo, hi) if d == 1 else (hi, lo)


class _Conflict(Exception):
    def __init__(self, kind: str, vertices: Sequence[int], missing=None):
        super().__init__(kind)
        self.kind = kind
        self.vertices = tuple(vertices)
        self.missing = missing


def _propagate(
    eng: _Engine,
    dirs: list[int],
    out: list[int],
    queue: Iterable[int],
    events: list[TraceEvent] | None,
    names: Sequence[int],
) -> list[int]:
    """Run local constraints to a fixpoint; returns the newly forced edge indices."""
    pending = list(dict.fromkeys(queue))
    queued = set(pending)
    forced_all: list[int] = []
    while pending:
        ci = pending.pop(0)
        queued.discard(ci)
        c = eng.constraints[ci]
        cur = [dirs[e] * s for e, s in zip(c.edges, c.along)]
        if all(cur):
            if tuple(cur) not in _PATTERNS[len(cur)]:
                raise _Conflict("blocked", [names[v] for v in c.cycle])
            continue
        options = [p for p in _PATTERNS[len(cur)] if all(x == 0 or x == y for x, y in zip(cur, p))]
        if not options:
            raise _Conflict("blocked", [names[v] for v in c.cycle])
        forced = []
        for i, x in enumerate(cur):
            if x:
                continue
            vals = {p[i] for p in options}
            if len(vals) == 1:
                e = c.edges[i]
                d = vals.pop() * c.along[i]
                dirs[e] = d
                a, b = eng.arc_of(e, d)
                out[a] |= 1 << b
                forced.append(e)
        if forced:
            forced_all.extend(forced)
            if events is not None:
                arcs = tuple(
                    (names[a], names[b]) for a, b in (eng.arc_of(e, dirs[e]) for e in forced)
                )
                events.append(CompleteEvent(tuple(names[v] for v in c.cycle), arcs))
            for e in forced:
                for cj in eng.by_edge[e]:
                    if cj not in queued:
                        queued.add(cj)
                        pending.append(cj)
    return forced_all


def _check_new(eng: _Engine, out: list[int], new_edges: Sequence[int], dirs: list[int]) -> None:
    """Raise _Conflict if oriented arcs contain a cycle or a shortcut involving new arcs."""
    n = eng.n
    order, cycle = _topo_or_cycle(n, out)
    if order is None:
        raise _Conflict("cycle", cycle)
    desc = _descendants(n, out, order)
    anc = [0] * n
    for v in range(n):
        for w in _bits(desc[v]):
            anc[w] |= 1 << v
    seen: set[tuple[int, int]] = set()
    for e in new_edges:
        u, v = eng.arc_of(e, dirs[e])
        tails = anc[u] | (1 << u)
        heads = desc[v] | (1 << v)
        for x in _bits(tails):
            for y in _bits(out[x] & heads):
                if (x, y) in seen:
                    continue
                seen.add((x, y))
                hit = _shortcut_on_arc(x, y, out, eng.adj, desc)
                if hit is not None:
                    path, missing = hit
                    raise _Conflict("shortcut", path, missing)


def _copy_names() -> Iterator[str]:
    k = 1
    while True:
        for combo in product("ABCDEFGHIJKLMNOPQRSTUVWXYZ", repeat=k):
            yield "".join(combo)
        k += 1


def propagate(o: Orientation) -> PropagationResult:
    """Apply the triangle and chordless 4-cycle completion rules to a fixpoint."""
    eng = _Engine(o.base)
    idx = o.base.index
    dirs = [0] * len(eng.edges)
    out = [0] * eng.n
    for u, v in o.arcs:
        a, b = idx[u], idx[v]
        e, s = eng._edge(a, b)
        dirs[e] = s
        out[a] |= 1 << b
    names = o.base.vertices
    try:
        _propagate(eng, dirs, out, range(len(eng.constraints)), None, names)
    except _Conflict as exc:
        return PropagationResult(o, conflict=exc.kind, conflict_cycle=exc.vertices)
    arcs = frozenset((names[a], names[b]) for e, d in enumerate(dirs) if d for a, b in [eng.arc_of(e, d)])
    return PropagationResult(Orientation(o.base, arcs))


def solve(g: Graph, budget: int | None = None, *, record_trace: bool = True) -> SolveResult:
    """Decide whether ``g`` has a semi-transitive orientation.

    Branches on the lexicographically smallest unoriented edge, low endpoint
    first; each branch point pushes a copy holding the opposite direction and
    dead ends resume from the most recent copy. The very first branch is
    explored in one direction only, since reversing every arc of a
    semi-transitive orientation gives another one.
    """
    if budget is None:
        budget = default_budget()
    trace = SearchTrace()
    events = trace.events if record_trace else None
    if g.m == 0:
        return SolveResult("oriented", Orientation(g, frozenset()), trace, 0)

    eng = _Engine(g)
    names = g.vertices
    m = len(eng.edges)
    name_gen = _copy_names()
    next(name_gen)  # "A" is the initial copy
    # stack entries: (name, dirs, out, edge, direction)
    stack: list[tuple[str, list[int], list[int], int, int]] = []
    dirs = [0] * m
    out = [0] * eng.n
    nodes = 0
    first = True
    resume: tuple[int, int] | None = None

    while True:
        if resume is None:
            e = next((i for i, d in enumerate(dirs) if d == 0), None)
            if e is None:
                arcs = frozenset(
                    (names[a], names[b]) for a, b in (eng.arc_of(i, d) for i, d in enumerate(dirs))
                )
                o = Orientation(g, arcs)
                verdict = is_semi_transitive(o)
                if not verdict.ok:
                    raise AssertionError(f"solver produced a bad orientation: {verdict}")
                return SolveResult("oriented", o, trace, nodes)
            d = 1
            if first:
                copy = None
                first = False
            else:
                copy = next(name_gen)
                stack.append((copy, dirs[:], out[:], e, -1))
            if events is not None:
                a, b = eng.arc_of(e, d)
                events.append(BranchEvent((names[a], names[b]), copy))
                if copy is not None:
                    events.append(NewCopyEvent(copy, (names[b], names[a])))
        else:
            e, d = resume
            resume = None

        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
        dirs[e] = d
        a, b = eng.arc_of(e, d)
        out[a] |= 1 << b
        try:
            forced = _propagate(eng, dirs, out, eng.by_edge[e], events, names)
            _check_new(eng, out, [e] + forced, dirs)
        except _Conflict as exc:
            if events is not None:
                missing = None
                if exc.missing is not None:
                    missing = (names[exc.missing[0]], names[exc.missing[1]])
                verts = exc.vertices if exc.kind == "blocked" else tuple(names[v] for v in exc.vertices)
                events.append(ShortcutEvent(exc.kind, verts, missing))
            if not stack:
                return SolveResult("impossible", None, trace, nodes)
            copy, dirs, out, e, d = stack.pop()
            if events is not None:
                events.append(MoveEvent(copy))
            resume = (e, d)
