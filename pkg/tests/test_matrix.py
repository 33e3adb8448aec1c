import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import matrices, square_matrices
from pcomp.graph import Graph, popcount
from pcomp.matrix import (
    BinaryMatrix,
    Digraph,
    MatrixFormatError,
    append_columns,
    assemble,
    digraph_p_competition,
    format_matrix,
    hstack,
    identity,
    lam,
    matrix_to_digraph,
    ones,
    p_row_graph,
    parse_matrix,
    replace_entry,
    vstack,
    zeros,
)


def test_bit_convention_first_character_is_column_zero():
    m = BinaryMatrix.from_strings(["100", "011"])
    assert m.rows == (0b001, 0b110)
    assert m.entry(0, 0) == 1 and m.entry(1, 2) == 1
    assert m.to_strings() == ["100", "011"]
    assert lam(m, 1) == frozenset({1, 2})


def test_matrix_validation():
    with pytest.raises(ValueError):
        BinaryMatrix((), 3)
    with pytest.raises(ValueError):
        BinaryMatrix((0b1000,), 3)
    with pytest.raises(ValueError):
        BinaryMatrix.from_lists([[1, 0], [1]])
    with pytest.raises(ValueError):
        BinaryMatrix.from_lists([[2]])


def test_constructors_and_stacking():
    assert ones(2, 3).to_strings() == ["111", "111"]
    assert zeros(1, 2).to_strings() == ["00"]
    assert identity(3).to_strings() == ["100", "010", "001"]
    assert hstack(identity(2), ones(2, 1)).to_strings() == ["101", "011"]
    assert vstack(identity(2), zeros(1, 2)).to_strings() == ["10", "01", "00"]
    grid = assemble([[identity(1), zeros(1, 1)], [ones(1, 1), identity(1)]])
    assert grid.to_strings() == ["10", "11"]
    assert append_columns(identity(2), 1, 2).to_strings() == ["10100", "01100"]
    with pytest.raises(ValueError):
        hstack(identity(2), identity(3))


def test_replace_entry():
    m = ones(2, 2)
    assert replace_entry(m, 0, 1, 0).to_strings() == ["10", "11"]
    assert replace_entry(m, 0, 1, 1) == m


def test_p_row_graph_small():
    m = BinaryMatrix.from_strings(["1100", "1110", "0111", "0011"])
    assert p_row_graph(m, 2).edges() == [(0, 1), (1, 2), (2, 3)]
    assert p_row_graph(m, 1).edges() == [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    with pytest.raises(ValueError):
        p_row_graph(m, 0)


@settings(max_examples=200)
@given(matrices(), st.integers(1, 7))
def test_p_row_graph_definition(m, p):
    g = p_row_graph(m, p)
    for i in range(m.n_rows):
        for j in range(i + 1, m.n_rows):
            common = sum(m.entry(i, c) and m.entry(j, c) for c in range(m.cols))
            assert g.has_edge(i, j) == (common >= p)


@settings(max_examples=200)
@given(matrices(), st.integers(1, 6))
def test_p_row_graph_monotone_in_p(m, p):
    lower = p_row_graph(m, p)
    upper = p_row_graph(m, p + 1)
    assert set(upper.edges()) <= set(lower.edges())


@settings(max_examples=200)
@given(matrices(), st.integers(1, 7), st.randoms(use_true_random=False))
def test_column_permutation_leaves_graph_unchanged(m, p, rng):
    order = list(range(m.cols))
    rng.shuffle(order)
    assert p_row_graph(m.permute_columns(order), p) == p_row_graph(m, p)


@settings(max_examples=200)
@given(matrices(), st.integers(1, 7), st.randoms(use_true_random=False))
def test_row_permutation_permutes_graph(m, p, rng):
    order = list(range(m.n_rows))
    rng.shuffle(order)
    g = p_row_graph(m, p)
    h = p_row_graph(m.permute_rows(order), p)
    for a in range(m.n_rows):
        for b in range(a + 1, m.n_rows):
            assert h.has_edge(a, b) == g.has_edge(order[a], order[b])


def test_bridge_identity_over_1000_random_matrices():
    rng = random.Random(2024)
    for _ in range(1000):
        n = rng.randint(1, 8)
        m = BinaryMatrix(tuple(rng.getrandbits(n) for _ in range(n)), n)
        d = matrix_to_digraph(m)
        for p in range(1, n + 1):
            assert digraph_p_competition(d, p) == p_row_graph(m, p)


def test_bridge_keeps_loops():
    # a loop at 0 and arcs 1 -> 0: the common prey is vertex 0 itself
    d = Digraph.from_arcs(2, [(0, 0), (1, 0)])
    assert digraph_p_competition(d, 1).edges() == [(0, 1)]
    assert d.arcs() == [(0, 0), (1, 0)]


def test_digraph_validation():
    with pytest.raises(ValueError):
        Digraph(2, (0,))
    with pytest.raises(ValueError):
        Digraph.from_arcs(2, [(0, 2)])
    with pytest.raises(ValueError):
        matrix_to_digraph(ones(2, 3))


@given(matrices())
def test_matrix_text_round_trip(m):
    assert parse_matrix(format_matrix(m)) == m


@pytest.mark.parametrize(
    "text, line",
    [
        ("2\n", 1),
        ("2 2\n10\n", 1),
        ("2 2\n10\n1x\n", 3),
        ("1 3\n10\n", 2),
        ("0 2\n", 1),
    ],
)
def test_matrix_parse_errors(text, line):
    with pytest.raises(MatrixFormatError) as info:
        parse_matrix(text)
    assert info.value.line == line


@given(square_matrices())
def test_transpose_is_involution(m):
    t = m.transpose()
    assert t.transpose() == m
    assert all(t.entry(j, i) == m.entry(i, j) for i in range(m.n_rows) for j in range(m.cols))
    assert m.row_weights() == [popcount(r) for r in m.rows]


def test_graph_of_all_ones_and_zeros():
    assert p_row_graph(ones(4, 4), 4) == Graph.complete(4)
    assert p_row_graph(zeros(4, 4), 1) == Graph.empty(4)
