import pytest
from hypothesis import given, settings, strategies as st

from wordrep.graph import Graph, complete_graph, cycle_graph, wheel_graph
from wordrep.polyomino import strip_k4_graph
from wordrep.words import (
    SearchBudgetExceeded,
    WordError,
    alternate,
    alternation_graph,
    delete_letter,
    find_representant,
    format_word,
    parse_word,
    path_word,
    represents,
    strip_word,
)

from oracles import uniform_representants, word_edges

C4_WORD = (1, 4, 2, 1, 3, 2, 4, 3)


def test_alternate_examples():
    assert alternate(C4_WORD, 1, 2)
    assert not alternate(C4_WORD, 1, 3)
    assert alternate((7, 9), 7, 9)


def test_alternate_symmetric():
    for x in range(1, 5):
        for y in range(1, 5):
            if x != y:
                assert alternate(C4_WORD, x, y) == alternate(C4_WORD, y, x)


@pytest.mark.parametrize("x,y", [(1, 1), (1, 9)])
def test_alternate_errors(x, y):
    with pytest.raises(WordError):
        alternate(C4_WORD, x, y)


def test_c4_word_graph():
    g = alternation_graph(C4_WORD)
    assert g == Graph.build((1, 2, 3, 4), [(1, 2), (2, 3), (3, 4), (1, 4)])


def test_permutation_gives_clique():
    g = alternation_graph((3, 0, 4, 1, 2))
    assert g.edges == complete_graph(5).edges


def test_path_word():
    assert path_word(4) == (1, 2, 1, 3, 2, 4, 3)
    for n in range(2, 9):
        path = Graph.build(range(1, n + 1), [(i, i + 1) for i in range(1, n)])
        assert represents(path_word(n), path)


def test_represents_alphabet_mismatch():
    g = Graph.build((1, 2, 3), [(1, 2)])
    with pytest.raises(WordError):
        represents((1, 2, 1, 2), g)


def test_strip_word_lengths():
    assert strip_word(1) == (0, 1)
    assert len(strip_word(6)) == 22


@pytest.mark.parametrize("n", range(1, 7))
def test_strip_word_represents_k4_strip(n):
    assert represents(strip_word(n), strip_k4_graph(n))


def test_strip_word_primed_text():
    # 1 1' 2 2' 1 1' 3 3' 2 2' with i -> 2i, i' -> 2i + 1, shifted to start at 0
    w = parse_word("11'22'11'33'22'")
    assert tuple(a - 2 for a in w) == strip_word(3)


def test_parse_word_forms():
    assert parse_word("14213243") == C4_WORD
    assert parse_word("1 4 2 1 3 2 4 3") == C4_WORD
    assert parse_word("10 11 10") == (10, 11, 10)
    assert parse_word("1 1'") == (2, 3)
    with pytest.raises(WordError):
        parse_word("12a")
    with pytest.raises(WordError):
        parse_word("   ")


def test_format_word_round_trip():
    for w in [C4_WORD, (10, 2, 10)]:
        assert parse_word(format_word(w)) == w


def test_find_representant_k3():
    w = find_representant(complete_graph(3), 1)
    assert sorted(w) == [0, 1, 2]


def test_find_representant_c4_two_uniform():
    w = find_representant(cycle_graph(4), 2)
    assert w is not None and len(w) == 8 and represents(w, cycle_graph(4))


def test_find_representant_w5_none():
    assert find_representant(wheel_graph(5), 3) is None


def test_find_representant_budget():
    with pytest.raises(SearchBudgetExceeded):
        find_representant(complete_graph(20), 3, max_letters=40)
    with pytest.raises(SearchBudgetExceeded):
        find_representant(wheel_graph(5), 3, node_budget=10)


def test_w5_exhaustive_uniform_oracle():
    # no 1-, 2- or 3-uniform word on the six letters represents W5
    w5 = wheel_graph(5)
    for k in (1, 2, 3):
        assert next(uniform_representants(w5.vertices, w5.edges, k), None) is None


@st.composite
def tiny_graphs(draw):
    n = draw(st.integers(1, 5))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.build(range(n), [e for e, b in zip(pairs, keep) if b])


@settings(max_examples=150, deadline=None)
@given(tiny_graphs())
def test_find_representant_agrees_with_oracle(g):
    exists = False
    for k in (1, 2):
        exists = exists or next(uniform_representants(g.vertices, g.edges, k), None) is not None
        found = find_representant(g, k)
        assert (found is not None) == exists
        if found is not None:
            assert represents(found, g)


words = st.lists(st.integers(0, 6), min_size=1, max_size=14)


@settings(max_examples=300, deadline=None)
@given(words)
def test_alternation_graph_matches_definition(w):
    assert alternation_graph(w).edges == word_edges(w)


@settings(max_examples=200, deadline=None)
@given(words)
def test_find_representant_sound(w):
    g = alternation_graph(w)
    if g.n <= 5:
        found = find_representant(g, 3)
        assert found is None or represents(found, g)


def test_delete_letter():
    assert delete_letter(C4_WORD, 4) == (1, 2, 1, 3, 2, 3)
