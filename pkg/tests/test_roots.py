from __future__ import annotations

import pytest

from klrpbw.pbw import data_of_weight
from klrpbw.roots import (
    CapExceeded,
    NotSinkOrSource,
    PatternMismatch,
    adapted_orientation,
    cartan,
    count_w0_words,
    enumerate_w0_words,
    gamma_sequence,
    is_adapted,
    is_reduced,
    is_w0_word,
    kostant_count,
    kostant_partitions,
    move_path,
    positive_roots,
    reflect,
    sinks,
    sources,
    weights_up_to,
    word_move,
)

A2, A3, D4 = cartan("A", 2), cartan("A", 3), cartan("D", 4)


@pytest.mark.parametrize("c", [A2, A3, D4, cartan("A", 4), cartan("E", 6)])
def test_cartan_matrix_shape(c):
    C = c.cartan
    for i in range(c.rank):
        assert C[i][i] == 2
        for j in range(c.rank):
            assert C[i][j] == C[j][i]
            assert i == j or C[i][j] in (0, -1)
    # a tree: rank - 1 edges
    assert len(c.edges) == c.rank - 1


def test_d4_center_is_two():
    assert sorted(D4.neighbours(2)) == [1, 3, 4]


@pytest.mark.parametrize("c,n", [(A2, 3), (A3, 6), (D4, 12), (cartan("A", 4), 10), (cartan("E", 6), 36)])
def test_positive_root_counts(c, n):
    assert len(positive_roots(c)) == n


def test_a2_roots():
    assert set(positive_roots(A2)) == {(1, 0), (0, 1), (1, 1)}


def test_w0_words():
    assert enumerate_w0_words(A2) == [(1, 2, 1), (2, 1, 2)]
    assert len(enumerate_w0_words(A3)) == 16
    assert count_w0_words(D4) == 2316
    assert is_reduced(A2, (1, 2, 1)) and is_w0_word(A2, (1, 2, 1))
    assert not is_reduced(A2, (1, 1))
    with pytest.raises(CapExceeded):
        enumerate_w0_words(D4, cap=100)


def test_gamma_examples():
    assert gamma_sequence(A2, (1, 2, 1)) == ((1, 0), (1, 1), (0, 1))
    assert gamma_sequence(A2, (2, 1, 2)) == ((0, 1), (1, 1), (1, 0))


@pytest.mark.parametrize("c", [A2, A3])
def test_gamma_is_bijection_for_every_word(c):
    roots = sorted(positive_roots(c))
    for w in enumerate_w0_words(c):
        g = gamma_sequence(c, w)
        assert sorted(g) == roots
        assert g[0] == tuple(1 if v == w[0] else 0 for v in c.vertices)


def test_word_moves():
    w = (1, 3, 2, 1, 3, 2)
    assert is_w0_word(A3, w)
    assert word_move(A3, w, 1, 2)[:2] == (3, 1)
    assert word_move(A2, (1, 2, 1), 1, 3) == (2, 1, 2)
    assert word_move(A2, word_move(A2, (1, 2, 1), 1, 3), 1, 3) == (1, 2, 1)
    with pytest.raises(PatternMismatch):
        word_move(A2, (1, 2, 1), 1, 2)


def test_move_graph_connected_a3():
    ws = enumerate_w0_words(A3)
    for w in ws:
        path = move_path(A3, ws[0], w)
        cur = ws[0]
        for pos, kind in path:
            cur = word_move(A3, cur, pos, kind)
        assert cur == w


def test_orientations():
    om = frozenset({(1, 2)})
    assert sinks(A2, om) == {2} and sources(A2, om) == {1}
    assert reflect(A2, om, 2) == frozenset({(2, 1)})
    assert is_adapted(A2, (2, 1, 2), om)
    assert not is_adapted(A2, (1, 2, 1), om)
    with pytest.raises(NotSinkOrSource):
        reflect(A3, frozenset({(1, 2), (2, 3)}), 2)
    assert adapted_orientation(A2, (1, 2, 1)) == frozenset({(2, 1)})


def test_kostant_examples():
    assert sorted(kostant_partitions(A2, (1, 1))) == sorted([((1, 1),), ((0, 1), (1, 0))])
    assert kostant_count(A2, (1, 2)) == 2
    assert kostant_partitions(A2, (1, 0)) == [((1, 0),)]
    assert kostant_count(A3, (1, 1, 1)) == 4


@pytest.mark.parametrize("c,h", [(A2, 6), (A3, 6)])
def test_datum_count_is_word_independent(c, h):
    ws = enumerate_w0_words(c)
    for beta in weights_up_to(c, h):
        n = kostant_count(c, beta)
        for w in ws:
            assert len(data_of_weight(c, w, beta)) == n


def test_datum_count_d4_sample():
    ws = enumerate_w0_words(D4)[::400]
    for beta in weights_up_to(D4, 4):
        n = kostant_count(D4, beta)
        for w in ws:
            assert len(data_of_weight(D4, w, beta)) == n
