"""Alternation words: word -> graph, representation checks, a brute-force representant search."""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .graph import Graph

Word = tuple[int, ...]


class WordError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """The representant search hit its letter or node budget before finishing."""


def as_word(letters: Iterable[int]) -> Word:
    return tuple(int(x) for x in letters)


def _restrict(w: Sequence[int], x: int, y: int) -> list[int]:
    return [a for a in w if a == x or a == y]


def alternate(w: Sequence[int], x: int, y: int) -> bool:
    if x == y:
        raise WordError("alternation needs two distinct letters")
    if x not in w or y not in w:
        raise WordError(f"letters {x} and {y} must both occur in the word")
    sub = _restrict(w, x, y)
    return all(a != b for a, b in zip(sub, sub[1:]))


def alternation_graph(w: Sequence[int]) -> Graph:
    """Graph on the distinct letters of ``w``; x~y iff x and y alternate."""
    if not w:
        raise WordError("empty word")
    letters = sorted(set(w))
    positions: dict[int, list[int]] = {a: [] for a in letters}
    for i, a in enumerate(w):
        positions[a].append(i)
    edges = []
    for i, x in enumerate(letters):
        px = positions[x]
        for y in letters[i + 1:]:
            if _alternating_positions(px, positions[y]):
                edges.append((x, y))
    return Graph.build(letters, edges)


def _alternating_positions(px: list[int], py: list[int]) -> bool:
    if abs(len(px) - len(py)) > 1:
        return False
    if len(px) < len(py) or (len(px) == len(py) and py[0] < px[0]):
        px, py = py, px
    # px leads: px[0] < py[0] < px[1] < py[1] < ...
    merged = []
    for i in range(len(px)):
        merged.append(px[i])
        if i < len(py):
            merged.append(py[i])
    return all(a < b for a, b in zip(merged, merged[1:]))


def represents(w: Sequence[int], g: Graph) -> bool:
    if set(w) != set(g.vertices):
        raise WordError(
            f"alphabet mismatch: word letters {sorted(set(w))} vs graph vertices {list(g.vertices)}"
        )
    return alternation_graph(w).edges == g.edges


def delete_letter(w: Sequence[int], x: int) -> Word:
    return tuple(a for a in w if a != x)


def find_representant(
    g: Graph,
    k_max: int = 3,
    *,
    max_letters: int = 40,
    node_budget: int = 5_000_000,
) -> Word | None:
    """Search k-uniform words (k = 1..k_max) representing ``g``.

    Returns ``None`` when nothing is found up to ``k_max``; that is an
    inconclusive answer, not a proof of non-representability. Raises
    :class:`SearchBudgetExceeded` if ``n * k_max`` exceeds ``max_letters`` or
    the search visits more than ``node_budget`` partial words.

    The first letter is pinned to the smallest vertex: a cyclic shift of a
    uniform representant is again a representant, so some representant starts
    with any chosen letter.
    """
    if k_max < 1:
        raise WordError("k_max must be at least 1")
    if g.n == 0:
        return None
    if g.n * k_max > max_letters:
        raise SearchBudgetExceeded(
            f"n*k_max = {g.n * k_max} exceeds the letter budget {max_letters}"
        )
    nodes = [0]
    for k in range(1, k_max + 1):
        found = _search_uniform(g, k, nodes, node_budget)
        if found is not None:
            assert represents(found, g)
            return found
    return None


def _search_uniform(g: Graph, k: int, nodes: list[int], node_budget: int) -> Word | None:
    n = g.n
    adj = g.adjacency_masks
    full = (1 << n) - 1
    non_adj = [full & ~adj[x] & ~(1 << x) for x in range(n)]
    count = [0] * n
    # seen_since[x]: letters placed since the latest occurrence of x
    seen_since = [0] * n
    # broken[x]: letters y whose {x, y}-subsequence already has two equal neighbours
    broken = [0] * n
    word: list[int] = []
    total = n * k

    def rec() -> bool:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise SearchBudgetExceeded(f"representant search exceeded {node_budget} nodes")
        if len(word) == total:
            return all(not (non_adj[x] & ~broken[x]) for x in range(n))
        for x in ([0] if not word else range(n)):
            if count[x] == k:
                continue
            rep = 0
            if count[x]:
                rep = full & ~seen_since[x] & ~(1 << x)
                if rep & adj[x]:
                    continue
            saved = (seen_since[:], broken[:])
            if rep:
                broken[x] |= rep
                m = rep
                while m:
                    low = m & -m
                    broken[low.bit_length() - 1] |= 1 << x
                    m ^= low
            count[x] += 1
            bit = 1 << x
            for y in range(n):
                seen_since[y] |= bit
            seen_since[x] = 0
            word.append(x)
            feasible = True
            if count[x] == k:
                m = non_adj[x] & ~broken[x]
                while m:
                    low = m & -m
                    if count[low.bit_length() - 1] == k:
                        feasible = False
                        break
                    m ^= low
            if feasible and rec():
                return True
            word.pop()
            count[x] -= 1
            seen_since[:], broken[:] = saved
        return False

    if rec():
        return tuple(g.vertices[i] for i in word)
    return None


_TOKEN = re.compile(r"(\d+)('?)")


def parse_word(text: str) -> Word:
    """Parse a word given as whitespace-separated tokens or a compact digit string.

    Primed letters (``1'``) are allowed; when any prime occurs, every letter is
    encoded as ``i -> 2i`` and ``i' -> 2i + 1``.
    """
    text = text.strip()
    if not text:
        raise WordError("empty word")
    tokens = text.split() if any(ch.isspace() for ch in text) else None
    pairs: list[tuple[int, bool]] = []
    if tokens is not None:
        for tok in tokens:
            m = _TOKEN.fullmatch(tok)
            if not m:
                raise WordError(f"bad letter token {tok!r}")
            pairs.append((int(m.group(1)), bool(m.group(2))))
    else:
        i = 0
        while i < len(text):
            ch = text[i]
            if not ch.isdigit():
                raise WordError(f"unexpected character {ch!r} at offset {i}")
            primed = i + 1 < len(text) and text[i + 1] == "'"
            pairs.append((int(ch), primed))
            i += 2 if primed else 1
    if any(p for _, p in pairs):
        return tuple(2 * a + (1 if p else 0) for a, p in pairs)
    return tuple(a for a, _ in pairs)


def format_word(w: Sequence[int]) -> str:
    if all(0 <= a < 10 for a in w):
        return "".join(str(a) for a in w)
    return " ".join(str(a) for a in w)


def path_word(n: int) -> Word:
    """``1 2 1 3 2 4 3 ... n (n-1)`` representing the path ``1-2-...-n``."""
    if n < 1:
        raise WordError("n must be positive")
    w = [1]
    for k in range(2, n + 1):
        w += [k, k - 1]
    return tuple(w)


def strip_word(n: int) -> Word:
    """``1 1' 2 2' 1 1' 3 3' 2 2' ...`` up to the block ``n n' (n-1)(n-1)'``.

    Row ``i`` (from the top, 1-based) of the two-column strip has its left
    vertex encoded as ``2(i-1)`` and its right vertex as ``2(i-1)+1``, which
    matches the vertex ids of :func:`wordrep.polyomino.k4_substitution` on a
    vertical strip of ``n - 1`` cells.
    """
    if n < 1:
        raise WordError("n must be positive")

    def block(i: int) -> list[int]:
        return [2 * (i - 1), 2 * (i - 1) + 1]

    w = block(1)
    for k in range(2, n + 1):
        w += block(k) + block(k - 1)
    return tuple(w)
