"""Generalized composition of graphs and its iteration over enriched Schröder trees."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .combinatorics import (
    Leaf, LinearOrder, Node, SegmentedPartition, Tree, index_tree, leaf_labels,
)
from .errors import ConnectivityError
from .graphs import (
    SimpleGraph, adjacency_matrix, complement, external_valencies,
    is_connected, laplacian_matrix, regularity,
)


@dataclass(frozen=True)
class OrderedAssembly:
    """One graph per segment of a segmented partition."""

    partition: SegmentedPartition
    components: tuple[SimpleGraph, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        segs = self.partition.segments
        if len(comps) != len(segs):
            raise ValueError(f"{len(comps)} components for {len(segs)} segments")
        for j, (g, seg) in enumerate(zip(comps, segs)):
            if g.order != seg:
                raise ValueError(f"component {j} is over {g.order}, expected segment {seg}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, graphs: Sequence[SimpleGraph]) -> "OrderedAssembly":
        """Assemble ``graphs`` left to right; clashing labels get a block prefix."""
        graphs = list(graphs)
        labels = [lab for g in graphs for lab in g.order]
        if len(set(labels)) != len(labels):
            graphs = [g.relabel(LinearOrder(tuple(f"{j + 1}.{lab}" for lab in g.order)))
                      for j, g in enumerate(graphs)]
        order = LinearOrder(tuple(lab for g in graphs for lab in g.order))
        return cls(SegmentedPartition.from_sizes(order, [g.n for g in graphs]), tuple(graphs))

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.partition.sizes

    def __len__(self) -> int:
        return len(self.components)


def _check_external(a: OrderedAssembly, h: SimpleGraph) -> None:
    if len(h) != len(a):
        raise ValueError(f"external graph has {len(h)} vertices, assembly has {len(a)} blocks")


def compose(a: OrderedAssembly, h: SimpleGraph) -> SimpleGraph:
    """The generalized composition: keep every component, join blocks adjacent in ``h``."""
    _check_external(a, h)
    spans = a.partition.spans()
    edges = []
    for g, span in zip(a.components, spans):
        edges.extend((i + span.start, j + span.start) for i, j in g.edges)
    for r, s in h.edges:
        edges.extend((x, y) for x in spans[r] for y in spans[s])
    return SimpleGraph(a.partition.parent, edges)


def direct_sum(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    dtype = np.result_type(*blocks) if blocks else np.int64
    out = np.zeros((n, n), dtype=dtype)
    k = 0
    for b in blocks:
        m = b.shape[0]
        out[k:k + m, k:k + m] = b
        k += m
    return out


def partitioned_hadamard(a: np.ndarray, b: np.ndarray, partition: SegmentedPartition) -> np.ndarray:
    """Scale block ``(i, j)`` of ``b`` (blocks cut by ``partition``) by ``a[i, j]``."""
    a = np.asarray(a)
    b = np.asarray(b)
    k = len(partition)
    n = len(partition.parent)
    if a.shape != (k, k) or b.shape != (n, n):
        raise ValueError(f"expected a {k}x{k} and an {n}x{n} matrix, got {a.shape} and {b.shape}")
    spans = partition.spans()
    out = np.zeros((n, n), dtype=np.result_type(a, b))
    for i, si in enumerate(spans):
        for j, sj in enumerate(spans):
            out[si.start:si.stop, sj.start:sj.stop] = a[i, j] * b[si.start:si.stop, sj.start:sj.stop]
    return out


def blocked_adjacency(a: OrderedAssembly, h: SimpleGraph) -> np.ndarray:
    _check_external(a, h)
    n = len(a.partition.parent)
    ones = np.ones((n, n), dtype=np.int64)
    return (direct_sum([adjacency_matrix(g) for g in a.components])
            + partitioned_hadamard(adjacency_matrix(h), ones, a.partition))


def blocked_laplacian(a: OrderedAssembly, h: SimpleGraph) -> np.ndarray:
    _check_external(a, h)
    n = len(a.partition.parent)
    ext = external_valencies(a.sizes, h)
    diag = [laplacian_matrix(g) + N * np.eye(g.n, dtype=np.int64) for g, N in zip(a.components, ext)]
    ones = np.ones((n, n), dtype=np.int64)
    return direct_sum(diag) - partitioned_hadamard(adjacency_matrix(h), ones, a.partition)


# -- trees -----------------------------------------------------------------------

def _require_graph(node: Node) -> SimpleGraph:
    if node.graph is None:
        raise ValueError("tree is not enriched: an internal vertex has no external graph")
    return node.graph


@lru_cache(maxsize=1024)
def eval_tree(tree: Tree) -> SimpleGraph:
    """The graph obtained by composing recursively from the leaves up to the root."""
    if isinstance(tree, Leaf):
        return SimpleGraph(LinearOrder((tree.label,)))
    parts = [eval_tree(c) for c in tree.children]
    return compose(OrderedAssembly.of(parts), _require_graph(tree)).relabel(leaf_labels(tree))


def complement_tree(tree: Tree) -> Tree:
    if isinstance(tree, Leaf):
        return tree
    return Node(tuple(complement_tree(c) for c in tree.children), complement(_require_graph(tree)))


@dataclass(frozen=True)
class Factor:
    """One composition step ``graph = compose(blocks, h)`` inside a larger graph.

    ``external_valency`` is the number of vertices of the larger graph adjacent
    to every vertex of this step (0 at the root); ``vertices`` are the positions
    of the step's vertices in the larger graph.
    """

    h: SimpleGraph
    blocks: tuple[SimpleGraph, ...]
    external_valency: int
    graph: SimpleGraph
    vertices: tuple[int, ...]
    level: int
    handle: int | None = None

    @property
    def is_root(self) -> bool:
        return self.level == 1

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(b.n for b in self.blocks)

    @cached_property
    def block_valencies(self) -> tuple[int, ...]:
        """External valency of each block inside this step alone."""
        return tuple(external_valencies(self.sizes, self.h))

    @cached_property
    def regularity(self) -> int | None:
        return regularity(self.graph)

    @cached_property
    def block_regularities(self) -> tuple[int | None, ...]:
        return tuple(regularity(b) for b in self.blocks)


@lru_cache(maxsize=256)
def tree_factors(tree: Tree) -> tuple[Factor, ...]:
    """The composition steps of an enriched tree, one per internal vertex, in DFS preorder."""
    idx = index_tree(tree)
    graphs = [eval_tree(t) for t in idx.subtrees]
    offset = [0] * len(idx)
    out = []
    for v, t in enumerate(idx.subtrees):
        if isinstance(t, Leaf):
            continue
        h = _require_graph(t)
        kids = idx.children[v]
        sizes = [len(idx.leaf_span[c]) for c in kids]
        for c, N in zip(kids, external_valencies(sizes, h)):
            offset[c] = offset[v] + N
        out.append(Factor(
            h=h,
            blocks=tuple(graphs[c] for c in kids),
            external_valency=offset[v],
            graph=graphs[v],
            vertices=tuple(idx.leaf_span[v]),
            level=idx.depth[v] + 1,
            handle=v,
        ))
    return tuple(out)


def external_valency_sum(tree: Tree, w: int) -> int:
    """Sum of the per-level external valencies along the path from the root to ``w``."""
    idx = index_tree(tree)
    w = idx.check(w)
    total = 0
    while idx.parent[w] >= 0:
        p = idx.parent[w]
        node = idx.subtrees[p]
        kids = idx.children[p]
        sizes = [len(idx.leaf_span[c]) for c in kids]
        total += external_valencies(sizes, _require_graph(node))[kids.index(w)]
        w = p
    return total


# -- divisibility ----------------------------------------------------------------

def quotient(blocks: Sequence[Sequence[int]], fine: SimpleGraph, coarse: SimpleGraph) -> SimpleGraph | None:
    """The graph ``h`` on ``blocks`` with ``coarse`` = fine components joined along ``h``.

    ``blocks`` must cover the vertices of both graphs.  Returns ``None`` when some
    pair of blocks is joined by only part of the possible edges, or when the
    two graphs differ inside a block.
    """
    where = {}
    for b, vs in enumerate(blocks):
        for v in vs:
            where[v] = b
    if len(where) != coarse.n or fine.n != coarse.n:
        raise ValueError("blocks must partition the vertex set of both graphs")
    for i, j in fine.edges:
        if where[i] != where[j] or not coarse.has_edge(i, j):
            return None
    cross: dict[tuple[int, int], int] = {}
    for i, j in coarse.edges:
        bi, bj = where[i], where[j]
        if bi == bj:
            if not fine.has_edge(i, j):
                return None
        else:
            key = (min(bi, bj), max(bi, bj))
            cross[key] = cross.get(key, 0) + 1
    for (bi, bj), count in cross.items():
        if count != len(blocks[bi]) * len(blocks[bj]):
            return None
    return SimpleGraph(LinearOrder.range(len(blocks), start=1), cross.keys())


def divides(a1: OrderedAssembly, a2: OrderedAssembly) -> SimpleGraph | None:
    """The quotient ``a2 / a1`` when ``a1`` refines ``a2``, else ``None``."""
    if a1.partition.parent != a2.partition.parent:
        raise ValueError("assemblies are over different linear orders")
    for a in (a1, a2):
        for g in a.components:
            if not is_connected(g):
                raise ConnectivityError("divisibility is defined for assemblies of connected graphs")
    empty1 = SimpleGraph(len(a1))
    empty2 = SimpleGraph(len(a2))
    return quotient([list(s) for s in a1.partition.spans()], compose(a1, empty1), compose(a2, empty2))

