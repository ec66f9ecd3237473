"""Linear orders, segmented partitions and (enriched) Schröder trees.

A Schröder tree is either a :class:`Leaf` or a :class:`Node` with at least two
children.  A node may carry an external graph whose vertices are its children,
in child order; a tree whose every node carries one is *enriched*.

Vertices of a tree are addressed by integer handles: the position of the
vertex in the depth-first preorder (root first, children left to right).
Leaves get handles too.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import TYPE_CHECKING, Iterator, Sequence, Union

from .errors import InvalidHandleError

if TYPE_CHECKING:
    from .graphs import SimpleGraph


@dataclass(frozen=True)
class LinearOrder:
    """A finite sequence of distinct, opaque vertex labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError(f"labels of a linear order must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def range(cls, n: int, start: int = 0) -> "LinearOrder":
        return cls(tuple(str(i) for i in range(start, start + n)))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return LinearOrder(self.labels[i])
        return self.labels[i]

    def __add__(self, other: "LinearOrder") -> "LinearOrder":
        return LinearOrder(self.labels + other.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __repr__(self) -> str:
        return f"LinearOrder({', '.join(self.labels)})"


@dataclass(frozen=True)
class SegmentedPartition:
    """A strong composition of a linear order into contiguous nonempty segments.

    ``boundaries`` holds the interior cut positions, so a partition into ``k``
    segments has ``k - 1`` boundaries, each strictly between 0 and ``n``.
    """

    parent: LinearOrder
    boundaries: tuple[int, ...] = ()

    def __post_init__(self):
        cuts = tuple(int(b) for b in self.boundaries)
        n = len(self.parent)
        if n == 0:
            raise ValueError("cannot partition the empty linear order")
        prev = 0
        for b in cuts:
            if not prev < b < n:
                raise ValueError(f"boundaries must be strictly increasing in (0, {n}): {cuts}")
            prev = b
        object.__setattr__(self, "boundaries", cuts)

    @classmethod
    def from_sizes(cls, parent: LinearOrder, sizes: Sequence[int]) -> "SegmentedPartition":
        if any(s <= 0 for s in sizes):
            raise ValueError(f"segment sizes must be positive: {tuple(sizes)}")
        if sum(sizes) != len(parent):
            raise ValueError(f"sizes {tuple(sizes)} do not add up to {len(parent)}")
        cuts, acc = [], 0
        for s in sizes[:-1]:
            acc += s
            cuts.append(acc)
        return cls(parent, tuple(cuts))

    @property
    def cuts(self) -> tuple[int, ...]:
        return (0,) + self.boundaries + (len(self.parent),)

    @property
    def sizes(self) -> tuple[int, ...]:
        c = self.cuts
        return tuple(c[i + 1] - c[i] for i in range(len(c) - 1))

    @property
    def segments(self) -> tuple[LinearOrder, ...]:
        c = self.cuts
        return tuple(self.parent[c[i]:c[i + 1]] for i in range(len(c) - 1))

    def spans(self) -> tuple[range, ...]:
        c = self.cuts
        return tuple(range(c[i], c[i + 1]) for i in range(len(c) - 1))

    def __len__(self) -> int:
        return len(self.boundaries) + 1


@dataclass(frozen=True)
class Leaf:
    label: str

    def __post_init__(self):
        object.__setattr__(self, "label", str(self.label))


@dataclass(frozen=True)
class Node:
    """Internal vertex of a Schröder tree, optionally enriched with a graph."""

    children: tuple["Tree", ...]
    graph: "SimpleGraph | None" = None

    def __post_init__(self):
        children = tuple(self.children)
        if len(children) < 2:
            raise ValueError("an internal vertex needs at least two children")
        if self.graph is not None and len(self.graph) != len(children):
            raise ValueError(
                f"external graph has {len(self.graph)} vertices but the node has "
                f"{len(children)} children")
        object.__setattr__(self, "children", children)


Tree = Union[Leaf, Node]


@dataclass(frozen=True)
class TreeIndex:
    """Preorder bookkeeping of a tree: one entry per vertex handle."""

    subtrees: tuple[Tree, ...]
    parent: tuple[int, ...]         # -1 for the root
    depth: tuple[int, ...]
    leaf_span: tuple[range, ...]    # positions of the subtree's leaves in the whole order
    children: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.subtrees)

    def check(self, v: int) -> int:
        if not isinstance(v, int) or not 0 <= v < len(self.subtrees):
            raise InvalidHandleError(v)
        return v


@lru_cache(maxsize=512)
def index_tree(tree: Tree) -> TreeIndex:
    subtrees: list[Tree] = []
    parent: list[int] = []
    depth: list[int] = []
    spans: list[range] = []
    children: list[tuple[int, ...]] = []
    leaf_pos = 0

    def visit(t: Tree, p: int, d: int) -> int:
        nonlocal leaf_pos
        h = len(subtrees)
        subtrees.append(t)
        parent.append(p)
        depth.append(d)
        spans.append(range(0))
        children.append(())
        start = leaf_pos
        if isinstance(t, Leaf):
            leaf_pos += 1
        else:
            children[h] = tuple(visit(c, h, d + 1) for c in t.children)
        spans[h] = range(start, leaf_pos)
        return h

    visit(tree, -1, 0)
    return TreeIndex(tuple(subtrees), tuple(parent), tuple(depth), tuple(spans), tuple(children))


def leaf_labels(tree: Tree) -> LinearOrder:
    if isinstance(tree, Leaf):
        return LinearOrder((tree.label,))
    out: list[str] = []
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, Leaf):
            out.append(t.label)
        else:
            stack.extend(reversed(t.children))
    return LinearOrder(tuple(out))


def leaves_of(tree: Tree, v: int = 0) -> LinearOrder:
    """Left-to-right leaves of the subtree rooted at handle ``v``."""
    idx = index_tree(tree)
    v = idx.check(v)
    labels = leaf_labels(tree).labels
    span = idx.leaf_span[v]
    return LinearOrder(labels[span.start:span.stop])


def pi_of(tree: Tree, v: int = 0) -> SegmentedPartition:
    """The segmented partition of ``leaves_of(tree, v)`` induced by the children of ``v``."""
    idx = index_tree(tree)
    v = idx.check(v)
    if isinstance(idx.subtrees[v], Leaf):
        raise ValueError(f"vertex {v} is a leaf and has no children")
    sizes = [len(idx.leaf_span[c]) for c in idx.children[v]]
    return SegmentedPartition.from_sizes(leaves_of(tree, v), sizes)


def internal_vertices_dfs(tree: Tree) -> tuple[int, ...]:
    idx = index_tree(tree)
    return tuple(h for h, t in enumerate(idx.subtrees) if isinstance(t, Node))


def n_leaves(tree: Tree) -> int:
    return len(index_tree(tree).leaf_span[0])


def is_enriched(tree: Tree) -> bool:
    return all(t.graph is not None for t in index_tree(tree).subtrees if isinstance(t, Node))


def shape(tree: Tree) -> Tree:
    """The underlying plain Schröder tree (enrichment dropped)."""
    if isinstance(tree, Leaf):
        return tree
    return Node(tuple(shape(c) for c in tree.children))
