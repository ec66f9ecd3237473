import numpy as np
import pytest

from spectral_operad.combinatorics import LinearOrder, SegmentedPartition
from spectral_operad.graphs import (
    SimpleGraph, adjacency_matrix, complement, complete, complete_bipartite, components, cycle,
    disjoint_union, empty, external_valency, format_graph, is_connected, laplacian_matrix,
    parse_graph, path, regularity,
)


def test_matrices(small_graph):
    a = adjacency_matrix(small_graph)
    assert (a == a.T).all() and a.sum() == 12
    lap = laplacian_matrix(small_graph)
    assert (lap.sum(axis=1) == 0).all()
    assert list(np.diag(lap)) == [2, 2, 4, 2, 2]
    assert laplacian_matrix(SimpleGraph(1)).tolist() == [[0]]
    assert laplacian_matrix(complete(2)).tolist() == [[1, -1], [-1, 1]]


def test_regularity():
    assert regularity(cycle(5)) == 2
    assert regularity(complete(4)) == 3
    assert regularity(path(3)) is None
    assert regularity(empty(3)) == 0
    assert regularity(complete_bipartite(3, 3)) == 3


def test_connectivity_and_components():
    assert is_connected(path(4))
    g = disjoint_union([complete(2), complete(3)])
    assert not is_connected(g)
    assert components(g) == [[0, 1], [2, 3, 4]]
    assert is_connected(SimpleGraph(1))
    with pytest.raises(ValueError):
        is_connected(SimpleGraph(0))


def test_complement():
    assert complement(complete(4)).edges == frozenset()
    assert complement(path(3)).sorted_edges() == [(0, 2)]
    g = cycle(5)
    assert complement(complement(g)) == g


def test_external_valency():
    p = SegmentedPartition.from_sizes(LinearOrder.range(9), [3, 2, 4])
    h = path(3)
    assert [external_valency(p, h, j) for j in range(3)] == [2, 7, 2]
    with pytest.raises(IndexError):
        external_valency(p, h, 3)


def test_invalid_graphs():
    with pytest.raises(ValueError):
        SimpleGraph(3, [(1, 1)])
    with pytest.raises(ValueError):
        SimpleGraph(3, [(0, 3)])


def test_text_round_trip(small_graph):
    text = format_graph(small_graph)
    assert text.splitlines()[0] == "5"
    assert parse_graph(text) == small_graph
    assert parse_graph("# comment\n3\n0 1 # edge\n\n1 2\n") == path(3)
    with pytest.raises(ValueError):
        parse_graph("3\n0 1\n1 0\n")
