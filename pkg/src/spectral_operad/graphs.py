"""Finite simple graphs over linear orders and their integer matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import LinearOrder, SegmentedPartition


@dataclass(frozen=True)
class SimpleGraph:
    """A simple graph whose vertices are the positions ``0..n-1`` of ``order``.

    ``order`` may be given as a :class:`LinearOrder`, a sequence of labels or a
    vertex count.  Edges are stored as sorted pairs of positions.
    """

    order: LinearOrder
    edges: frozenset = frozenset()

    def __post_init__(self):
        order = self.order
        if isinstance(order, int):
            order = LinearOrder.range(order)
        elif not isinstance(order, LinearOrder):
            order = LinearOrder(tuple(order))
        n = len(order)
        edges = set()
        for e in self.edges:
            i, j = (int(x) for x in e)
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge {(i, j)} out of range for {n} vertices")
            edges.add((min(i, j), max(i, j)))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "edges", frozenset(edges))

    def __len__(self) -> int:
        return len(self.order)

    @property
    def n(self) -> int:
        return len(self.order)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbours(self) -> list[set[int]]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            nb[i].add(j)
            nb[j].add(i)
        return nb

    def valencies(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def relabel(self, order) -> "SimpleGraph":
        return SimpleGraph(order, self.edges)

    def induced(self, vertices: Sequence[int], order=None) -> "SimpleGraph":
        """Subgraph induced on ``vertices``, renumbered in the given sequence order."""
        pos = {v: k for k, v in enumerate(vertices)}
        edges = [(pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos]
        if order is None:
            order = LinearOrder(tuple(self.order[v] for v in vertices))
        return SimpleGraph(order, edges)

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={self.sorted_edges()})"


# -- small named graphs ------------------------------------------------------

def complete(n: int, order=None) -> SimpleGraph:
    return SimpleGraph(order if order is not None else n, combinations(range(n), 2))


def empty(n: int, order=None) -> SimpleGraph:
    return SimpleGraph(order if order is not None else n)


def path(n: int, order=None) -> SimpleGraph:
    return SimpleGraph(order if order is not None else n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int, order=None) -> SimpleGraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return SimpleGraph(order if order is not None else n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(m: int, n: int, order=None) -> SimpleGraph:
    return SimpleGraph(order if order is not None else m + n,
                       [(i, m + j) for i in range(m) for j in range(n)])


def disjoint_union(graphs: Iterable[SimpleGraph]) -> SimpleGraph:
    """Side by side; clashing labels get a ``j.`` block prefix."""
    graphs = list(graphs)
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    for g in graphs:
        off = len(labels)
        labels.extend(g.order.labels)
        edges.extend((i + off, j + off) for i, j in g.edges)
    if len(set(labels)) != len(labels):
        labels = [f"{j + 1}.{lab}" for j, g in enumerate(graphs) for lab in g.order]
    return SimpleGraph(LinearOrder(tuple(labels)), edges)


# -- matrices ------------------------------------------------------------------

def adjacency_matrix(g: SimpleGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for i, j in g.edges:
        a[i, j] = a[j, i] = 1
    return a


def degree_matrix(g: SimpleGraph) -> np.ndarray:
    return np.diag(np.array(g.valencies(), dtype=np.int64)).reshape(g.n, g.n)


def laplacian_matrix(g: SimpleGraph) -> np.ndarray:
    return degree_matrix(g) - adjacency_matrix(g)


# -- predicates ----------------------------------------------------------------

def regularity(g: SimpleGraph) -> int | None:
    """The common valency of ``g``, or ``None`` when valencies differ."""
    deg = g.valencies()
    if not deg:
        return 0
    return deg[0] if all(d == deg[0] for d in deg) else None


def components(g: SimpleGraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    nb = g.neighbours()
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in nb[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: SimpleGraph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity of the empty graph is undefined")
    return len(components(g)) == 1


def complement(g: SimpleGraph) -> SimpleGraph:
    return SimpleGraph(g.order, set(combinations(range(g.n), 2)) - g.edges)


def external_valency(partition: SegmentedPartition, h: SimpleGraph, j: int) -> int:
    """Number of vertices outside block ``j`` joined to all of it through ``h``."""
    sizes = partition.sizes
    if len(h) != len(sizes):
        raise ValueError(f"external graph has {len(h)} vertices, partition has {len(sizes)} blocks")
    if not 0 <= j < len(sizes):
        raise IndexError(f"block index {j} out of range")
    return sum(sizes[s] for s in range(len(sizes)) if h.has_edge(s, j))


def external_valencies(sizes: Sequence[int], h: SimpleGraph) -> list[int]:
    out = [0] * len(sizes)
    for i, j in h.edges:
        out[i] += sizes[j]
        out[j] += sizes[i]
    return out


# -- text format -----------------------------------------------------------------

def format_graph(g: SimpleGraph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> SimpleGraph:
    """Read the ``n`` / ``i j`` edge-list format; ``#`` starts a comment."""
    rows = _data_rows(text)
    if not rows or len(rows[0]) != 1:
        raise ValueError("graph text must start with the vertex count")
    n = rows[0][0]
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise ValueError(f"expected 'i j', got {r}")
        edges.append(tuple(r))
    if len(set((min(e), max(e)) for e in edges)) != len(edges):
        raise ValueError("duplicate edge in graph text")
    return SimpleGraph(n, edges)


def _data_rows(text: str) -> list[list[int]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([int(tok) for tok in line.split()])
    return rows
