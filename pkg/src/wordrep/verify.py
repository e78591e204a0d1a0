"""Brute-force oracles and the reproducible checks behind ``wordrep verify``."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator

from .coloring import is_k_colorable
from .graph import Graph, contains_induced, t1_graph, t2_graph, wheel_graph
from .instances import ring_coloring, ring_polyomino, ring_triangulation
from .polyomino import (
    Polyomino,
    contains_forbidden,
    enumerate_convex_polyominoes,
    enumerate_polyominoes,
    enumerate_triangulations,
    forbidden_set,
    is_convex,
    k4_canonical_orientation,
    strip_k4_graph,
    triangulation_graph,
)
from .semitrans import (
    Orientation,
    is_semi_transitive,
    orientation_from_3coloring,
    orientation_from_4coloring_rules,
    reverse,
    solve,
)
from .words import alternation_graph, delete_letter, path_word, represents, strip_word


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def naive_semi_transitive(vertices, arcs) -> bool:
    """Semi-transitivity straight from the definition.

    Acyclic, and for every directed path v1 ... vk (k >= 4) with the arc
    v1 -> vk, every pair vi, vj (i < j) is an arc vi -> vj. Exponential in
    the worst case; meant for graphs with a dozen edges.
    """
    arcs = set(arcs)
    succ: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in arcs:
        succ[u].append(v)

    # acyclicity by repeated sink removal
    alive = set(vertices)
    while alive:
        sinks = [v for v in alive if not any(w in alive for w in succ[v])]
        if not sinks:
            return False
        alive.difference_update(sinks)

    def paths_from(path: list[int]) -> Iterator[list[int]]:
        yield path
        for w in succ[path[-1]]:
            yield from paths_from(path + [w])

    for v in vertices:
        for p in paths_from([v]):
            if len(p) >= 4 and (p[0], p[-1]) in arcs:
                if any((a, b) not in arcs for a, b in combinations(p, 2)):
                    return False
    return True


def all_orientations(g: Graph) -> Iterator[Orientation]:
    edges = g.sorted_edges()
    for mask in range(1 << len(edges)):
        arcs = frozenset((u, v) if mask >> i & 1 else (v, u) for i, (u, v) in enumerate(edges))
        yield Orientation(g, arcs)


def brute_force_orientation(g: Graph, check: Callable[[Orientation], bool] | None = None) -> Orientation | None:
    """First of the 2^m orientations accepted by ``check`` (naive definition by default)."""
    if check is None:
        check = lambda o: naive_semi_transitive(o.base.vertices, o.arcs)  # noqa: E731
    for o in all_orientations(g):
        if check(o):
            return o
    return None


def count_semi_transitive(g: Graph) -> int:
    return sum(1 for o in all_orientations(g) if is_semi_transitive(o).ok)


def random_graph(rng: random.Random, max_n: int = 7, max_m: int = 12) -> Graph:
    n = rng.randint(1, max_n)
    pairs = list(combinations(range(n), 2))
    m = rng.randint(0, min(max_m, len(pairs)))
    return Graph.build(range(n), rng.sample(pairs, m))


def random_3colored(rng: random.Random, max_n: int = 10) -> tuple[Graph, dict[int, int]]:
    n = rng.randint(1, max_n)
    colors = {v: rng.randint(1, 3) for v in range(n)}
    p = rng.random()
    edges = [(u, v) for u, v in combinations(range(n), 2) if colors[u] != colors[v] and rng.random() < p]
    return Graph.build(range(n), edges), colors


def random_word(rng: random.Random, max_letters: int = 7, max_len: int = 16) -> tuple[int, ...]:
    k = rng.randint(1, max_letters)
    w = list(range(k)) + [rng.randrange(k) for _ in range(rng.randint(0, max_len - k))]
    rng.shuffle(w)
    return tuple(w)


# ---------------------------------------------------------------------------
# Main-theorem sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    triangulation: str
    semi_transitive: bool
    three_colorable: bool
    forbidden_free: bool


def check_polyomino(p: Polyomino) -> tuple[int, list[Mismatch]]:
    """Compare the three characterisations on every triangulation of ``p``."""
    count = 0
    bad = []
    for t in enumerate_triangulations(p):
        g = triangulation_graph(t)
        a = solve(g, record_trace=False).possible
        b = is_k_colorable(g, 3) is not None
        c = not contains_forbidden(t)
        count += 1
        if not (a == b == c):
            bad.append(Mismatch(t.to_ascii(), a, b, c))
    return count, bad


def main_theorem_sweep(max_cells: int, jobs: int = 1) -> tuple[int, list[Mismatch]]:
    polys = enumerate_convex_polyominoes(max_cells)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check_polyomino, polys, chunksize=4))
    else:
        results = [check_polyomino(p) for p in polys]
    total = sum(c for c, _ in results)
    mismatches = [m for _, bad in results for m in bad]
    return total, mismatches


# ---------------------------------------------------------------------------
# Acceptance criteria
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:>2}. {self.title}: {self.detail} ({self.seconds:.3f}s)"


def _timed(fn: Callable[[], tuple[bool, str]]) -> tuple[bool, str, float]:
    t0 = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - t0


def criterion_c4_word() -> Outcome:
    w = (1, 4, 2, 1, 3, 2, 4, 3)
    alternation_graph(w)  # warm caches before timing
    t0 = time.perf_counter()
    g = alternation_graph(w)
    dt = time.perf_counter() - t0
    expected = Graph.build((1, 2, 3, 4), [(1, 2), (2, 3), (3, 4), (1, 4)])
    ok = g == expected and dt < 1e-3
    return Outcome(1, "C4 from 14213243", ok, f"edges {g.sorted_edges()}, {dt * 1e3:.3f} ms", dt)


def criterion_t1_t2(brute_force: bool = True) -> Outcome:
    details = []
    ok = True
    t_all = time.perf_counter()
    for name, g in (("T1", t1_graph()), ("T2", t2_graph())):
        t0 = time.perf_counter()
        res = solve(g)
        dt = time.perf_counter() - t0
        ok &= (not res.possible) and dt < 1.0
        details.append(f"{name} solver {res.outcome} in {dt:.3f}s")
        if brute_force:
            t0 = time.perf_counter()
            found = count_semi_transitive(g)
            dt = time.perf_counter() - t0
            ok &= found == 0 and dt < 600
            details.append(f"{name} brute force {found} of 2^{g.m} in {dt:.1f}s")
    return Outcome(2, "T1 and T2 have no semi-transitive orientation", ok, "; ".join(details), time.perf_counter() - t_all)


def criterion_w5() -> Outcome:
    def run():
        g = wheel_graph(5)
        res = solve(g)
        c3 = is_k_colorable(g, 3)
        c4 = is_k_colorable(g, 4)
        ok = not res.possible and c3 is None and c4 is not None and c4.is_proper(g)
        return ok, f"solver {res.outcome}, 3-colourable {c3 is not None}, 4-colourable {c4 is not None}"

    ok, detail, dt = _timed(run)
    return Outcome(3, "W5 is not word-representable", ok and dt < 1.0, detail, dt)


def criterion_three_coloring(seed: int = 2024, samples: int = 500) -> Outcome:
    def run():
        rng = random.Random(seed)
        failures = 0
        for _ in range(samples):
            g, colors = random_3colored(rng)
            if not is_semi_transitive(orientation_from_3coloring(g, colors)).ok:
                failures += 1
        return failures == 0, f"{samples} random 3-coloured graphs, {failures} failures"

    ok, detail, dt = _timed(run)
    return Outcome(4, "3-colouring orientations are semi-transitive", ok, detail, dt)


def criterion_forbidden_set() -> Outcome:
    def run():
        s = forbidden_set()
        keys = s.keys()
        colorable = sum(1 for g in s.graphs() if is_k_colorable(g, 3) is not None)
        orientable = sum(1 for g in s.graphs() if solve(g, record_trace=False).possible)
        ok = len(s) == 8 and len(keys) == 8 and colorable == 0 and orientable == 0
        return ok, f"{len(keys)} distinct patterns, {colorable} 3-colourable, {orientable} orientable"

    ok, detail, dt = _timed(run)
    return Outcome(5, "forbidden set", ok, detail, dt)


def criterion_square() -> Outcome:
    def run():
        square = Polyomino.rectangle(2, 2)
        ts = list(enumerate_triangulations(square))
        agree = 0
        non3 = 0
        for t in ts:
            col = is_k_colorable(triangulation_graph(t), 3) is not None
            agree += col == (not contains_forbidden(t))
            non3 += not col
        members = {f.key() for f in forbidden_set()}
        realizable = sum(1 for t in ts if t.key() in members)
        ok = len(ts) == 16 and agree == 16 and non3 == realizable == 8
        return ok, f"{len(ts)} triangulations, {agree} agree, {non3} not 3-colourable, {realizable} in S"

    ok, detail, dt = _timed(run)
    return Outcome(6, "2x2 square: 3-colourable iff forbidden-free", ok, detail, dt)


def criterion_main_theorem(max_cells: int = 5, jobs: int = 1) -> Outcome:
    def run():
        total, bad = main_theorem_sweep(max_cells, jobs)
        return not bad, f"{total} triangulations of convex polyominoes with <= {max_cells} cells, {len(bad)} mismatches"

    ok, detail, dt = _timed(run)
    return Outcome(7, "main theorem", ok and dt < 600, detail, dt)


def criterion_ring() -> Outcome:
    def run():
        t = ring_triangulation()
        g = triangulation_graph(t)
        non3 = is_k_colorable(g, 3) is None
        nonconvex = not is_convex(ring_polyomino())
        rule = is_semi_transitive(orientation_from_4coloring_rules(g, ring_coloring())).ok
        solved = solve(g).possible
        ok = non3 and nonconvex and rule and solved
        return ok, (
            f"not 3-colourable {non3}, non-convex {nonconvex}, "
            f"4-colour rule orientation ok {rule}, solver finds one {solved}"
        )

    ok, detail, dt = _timed(run)
    return Outcome(8, "non-convex counterexample", ok and dt < 10, detail, dt)


def criterion_k4() -> Outcome:
    def run():
        polys = enumerate_polyominoes(6)
        rects = [Polyomino.rectangle(w, h) for w in range(1, 6) for h in range(1, 6)]
        failed = [p for p in polys + rects if not is_semi_transitive(k4_canonical_orientation(p)).ok]
        strip = Polyomino.rectangle(5, 1)
        o = k4_canonical_orientation(strip, column_aligned=True)
        v = is_semi_transitive(o)
        witness = v.status == "shortcut" and v.shortcut.is_valid(o)
        ok = not failed and witness
        return ok, (
            f"{len(polys)} polyominoes + {len(rects)} rectangles, {len(failed)} failures; "
            f"column-aligned strip shortcut {v.shortcut.path if witness else None}"
        )

    ok, detail, dt = _timed(run)
    return Outcome(9, "K4 substitution orientation", ok and dt < 300, detail, dt)


def criterion_words() -> Outcome:
    def run():
        strips = [represents(strip_word(n), strip_k4_graph(n)) for n in range(1, 7)]
        paths = [
            represents(path_word(n), Graph.build(range(1, n + 1), [(i, i + 1) for i in range(1, n)]))
            for n in range(2, 9)
        ]
        return all(strips) and all(paths), f"strip words {sum(strips)}/6, path words {sum(paths)}/7"

    ok, detail, dt = _timed(run)
    return Outcome(10, "explicit words", ok, detail, dt)


def criterion_properties(seed: int = 7, cases: int = 1000) -> Outcome:
    """Seeded random version of the property suites (the test suite runs them under hypothesis)."""

    def run():
        rng = random.Random(seed)
        counts = [0, 0, 0, 0]
        for _ in range(cases):
            g = random_graph(rng)
            edges = g.sorted_edges()
            arcs = frozenset(e if rng.random() < 0.5 else e[::-1] for e in edges)
            o = Orientation(g, arcs)
            counts[0] += is_semi_transitive(o).ok == is_semi_transitive(reverse(o)).ok

            w = random_word(rng)
            x = rng.choice(sorted(set(w)))
            rest = delete_letter(w, x)
            if rest:
                sub = alternation_graph(w)
                kept = [v for v in sub.vertices if v != x]
                counts[1] += alternation_graph(rest).edges == {e for e in sub.edges if x not in e} and set(rest) == set(kept)
            else:
                counts[1] += 1

            g = random_graph(rng)
            counts[2] += solve(g, record_trace=False).possible == (brute_force_orientation(g) is not None)

            p = rng.choice(_small_polys())
            t = rng.choice(list(enumerate_triangulations(p)))
            host = triangulation_graph(t)
            induced = any(contains_induced(host, s) is not None for s in forbidden_set().graphs())
            counts[3] += induced == contains_forbidden(t)
        names = ["reversal", "letter deletion", "solver vs brute force", "window vs induced"]
        detail = ", ".join(f"{n} {c}/{cases}" for n, c in zip(names, counts))
        return all(c == cases for c in counts), detail

    ok, detail, dt = _timed(run)
    return Outcome(11, "property suites", ok, detail, dt)


_SMALL: list[Polyomino] = []


def _small_polys() -> list[Polyomino]:
    if not _SMALL:
        _SMALL.extend(enumerate_polyominoes(5))
    return _SMALL


def run_all(*, brute_force: bool = True, jobs: int = 1) -> list[Outcome]:
    return [
        criterion_c4_word(),
        criterion_t1_t2(brute_force),
        criterion_w5(),
        criterion_three_coloring(),
        criterion_forbidden_set(),
        criterion_square(),
        criterion_main_theorem(5, jobs),
        criterion_ring(),
        criterion_k4(),
        criterion_words(),
        criterion_properties(),
    ]

