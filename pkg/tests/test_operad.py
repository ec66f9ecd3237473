import numpy as np
import pytest

from spectral_operad.combinatorics import LinearOrder, SegmentedPartition
from spectral_operad.dsl import parse_tree
from spectral_operad.errors import ConnectivityError
from spectral_operad.graphs import (
    SimpleGraph, adjacency_matrix, complement, complete, cycle, empty, laplacian_matrix, path,
)
from spectral_operad.operad import (
    OrderedAssembly, blocked_adjacency, blocked_laplacian, complement_tree, compose, divides,
    eval_tree, partitioned_hadamard, tree_factors,
)


def test_compose_join_of_two():
    a = OrderedAssembly.of([complete(2), complete(2)])
    g = compose(a, complete(2))
    assert g == complete(4).relabel(g.order)
    assert len(compose(a, empty(2)).edges) == 2


def test_assembly_validation():
    lo = LinearOrder(tuple("abc"))
    p = SegmentedPartition.from_sizes(lo, [2, 1])
    with pytest.raises(ValueError):
        OrderedAssembly(p, (complete(2, lo[:2]),))
    with pytest.raises(ValueError):
        OrderedAssembly(p, (complete(2), SimpleGraph(lo[2:])))   # wrong labels
    a = OrderedAssembly(p, (complete(2, lo[:2]), SimpleGraph(lo[2:])))
    with pytest.raises(ValueError):
        compose(a, complete(3))


def test_partitioned_hadamard():
    p = SegmentedPartition.from_sizes(LinearOrder.range(3), [1, 2])
    out = partitioned_hadamard(np.array([[1, 2], [3, 4]]), np.ones((3, 3), dtype=int), p)
    assert out.tolist() == [[1, 2, 2], [3, 4, 4], [3, 4, 4]]
    with pytest.raises(ValueError):
        partitioned_hadamard(np.eye(3), np.ones((3, 3)), p)


@pytest.mark.parametrize("blocks,h", [
    ([complete(3), complete(2), complete(4)], path(3)),
    ([cycle(4), SimpleGraph(1), path(3)], complete(3)),
    ([SimpleGraph(2), complete(2)], empty(2)),
])
def test_block_matrices_match(blocks, h):
    a = OrderedAssembly.of(blocks)
    g = compose(a, h)
    assert (blocked_adjacency(a, h) == adjacency_matrix(g)).all()
    assert (blocked_laplacian(a, h) == laplacian_matrix(g)).all()


def test_eval_tree(worked, k4_tree):
    g = eval_tree(worked)
    assert g.n == 9 and len(g.edges) == 24
    assert g.order.labels == tuple("abcdefghi")
    assert len(eval_tree(k4_tree).edges) == 6
    assert eval_tree(parse_tree("(a,b;K)")).sorted_edges() == [(0, 1)]


def test_complement_tree(worked):
    assert eval_tree(complement_tree(worked)) == complement(eval_tree(worked))


def test_tree_factors(worked):
    fs = tree_factors(worked)
    assert [f.handle for f in fs] == [0, 1, 5, 8, 9, 12]
    assert [f.external_valency for f in fs] == [0, 2, 7, 2, 4, 4]
    assert [f.level for f in fs] == [1, 2, 2, 2, 3, 3]
    assert fs[0].sizes == (3, 2, 4) and fs[0].regularity is None
    assert fs[3].regularity == 3


def test_divides():
    lo = LinearOrder.range(4)
    singles = OrderedAssembly(SegmentedPartition.from_sizes(lo, [1] * 4),
                              tuple(SimpleGraph(lo[i:i + 1]) for i in range(4)))
    pairs = OrderedAssembly(SegmentedPartition.from_sizes(lo, [2, 2]),
                            (complete(2, lo[:2]), complete(2, lo[2:])))
    whole = OrderedAssembly(SegmentedPartition.from_sizes(lo, [4]), (complete(4, lo),))
    assert divides(singles, pairs).sorted_edges() == [(0, 1), (2, 3)]
    assert divides(pairs, whole).sorted_edges() == [(0, 1)]
    p4 = OrderedAssembly(SegmentedPartition.from_sizes(lo, [4]), (path(4, lo),))
    assert divides(pairs, p4) is None
    bad = OrderedAssembly(SegmentedPartition.from_sizes(lo, [2, 2]),
                          (SimpleGraph(lo[:2]), complete(2, lo[2:])))
    with pytest.raises(ConnectivityError):
        divides(bad, whole)
