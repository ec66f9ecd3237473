"""Seeded random enriched trees that satisfy the factorization hypotheses by construction."""

from __future__ import annotations

import random
from itertools import combinations

from .combinatorics import Leaf, Node, Tree
from .graphs import SimpleGraph, complete, complete_bipartite, cycle

ENRICHMENTS = ("regular", "connected")


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_connected_graph(k: int, rng: random.Random, p: float = 0.3) -> SimpleGraph:
    """A random spanning tree on ``k`` vertices plus each other pair with probability ``p``."""
    order = list(range(k))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, k)}
    for e in combinations(range(k), 2):
        if e not in edges and rng.random() < p:
            edges.add(e)
    return SimpleGraph(k, edges)


def _composition(n: int, k: int, rng: random.Random) -> list[int]:
    cuts = sorted(rng.sample(range(1, n), k - 1))
    bounds = [0] + cuts + [n]
    return [bounds[i + 1] - bounds[i] for i in range(k)]


def random_connected_tree(n_leaves: int, seed=None, max_arity: int = 5) -> Tree:
    """Exactly ``n_leaves`` leaves; every external graph is connected."""
    rng = _rng(seed)
    if n_leaves < 1:
        raise ValueError("a tree needs at least one leaf")

    def build(n: int) -> Tree:
        if n == 1:
            return Leaf("_")
        k = rng.randint(2, min(max_arity, n))
        return Node(tuple(build(s) for s in _composition(n, k, rng)), random_connected_graph(k, rng))

    return relabel_leaves(build(n_leaves))


# -- regular subtrees --------------------------------------------------------------

def _regular_external(k: int, rng: random.Random, allow_edgeless: bool) -> tuple[SimpleGraph, int]:
    """A regular external graph on ``k`` vertices and its valency (connected unless edgeless)."""
    options = [(complete(k), k - 1)]
    if k >= 4:
        options.append((cycle(k), 2))
    if k >= 4 and k % 2 == 0:
        options.append((complete_bipartite(k // 2, k // 2), k // 2))
    if allow_edgeless:
        options.append((SimpleGraph(k), 0))
    return rng.choice(options)


class _RegularBuilder:
    """Random trees whose every subtree graph is regular.

    Each builder returns ``(tree, n, r)``: the subtree, its leaf count and the
    valency of its graph.
    """

    def __init__(self, rng: random.Random, allow_edgeless: bool):
        self.rng = rng
        self.allow_edgeless = allow_edgeless

    def build(self, budget: int, force_node: bool = False):
        rng = self.rng
        if budget < 2 or (not force_node and rng.random() < 0.2):
            return Leaf("_"), 1, 0
        strategies = [self.over_leaves, self.join]
        if budget >= 4:
            strategies.append(self.copies)
        return rng.choice(strategies)(budget)

    def over_leaves(self, budget: int):
        k = self.rng.randint(2, min(budget, 6))
        h, d = _regular_external(k, self.rng, self.allow_edgeless)
        return Node(tuple(Leaf("_") for _ in range(k)), h), k, d

    def copies(self, budget: int):
        k = self.rng.randint(2, min(4, budget // 2))
        child, m, r = self.build(budget // k)
        h, d = _regular_external(k, self.rng, self.allow_edgeless)
        return Node((child,) * k, h), k * m, r + d * m

    def join(self, budget: int):
        # children with equal n - r stay regular under the complete join
        rng = self.rng
        first, m0, r0 = self.build(max(1, budget // 2))
        c = m0 - r0
        kids = [(first, m0, r0)]
        used = m0
        while used < budget and (len(kids) < 2 or rng.random() < 0.5):
            room = budget - used
            pick = [(first, m0, r0)] if m0 <= room else []
            if c == 1:
                pick.append((Leaf("_"), 1, 0))
                j = rng.randint(2, 5)
                if j <= room:
                    pick.append((Node(tuple(Leaf("_") for _ in range(j)), complete(j)), j, j - 1))
            if 2 * c <= room and c >= 2:
                pick.append((Node(tuple(Leaf("_") for _ in range(2 * c)),
                                  complete_bipartite(c, c)), 2 * c, c))
            if c + 2 <= room and c + 2 >= 4:
                pick.append((Node(tuple(Leaf("_") for _ in range(c + 2)), cycle(c + 2)), c + 2, 2))
            if not pick:
                break
            kid = rng.choice(pick)
            kids.append(kid)
            used += kid[1]
        if len(kids) < 2:
            return self.over_leaves(budget)
        total = sum(m for _, m, _ in kids)
        k = len(kids)
        return Node(tuple(t for t, _, _ in kids), complete(k)), total, r0 + total - m0


def random_regular_tree(max_leaves: int, seed=None, allow_edgeless: bool = False,
                        regular_root: bool = True, attempts: int = 6) -> Tree:
    """A tree with at most ``max_leaves`` leaves whose subtree graphs are all regular.

    Regularity rules out most leaf counts, so several candidates are drawn and
    the largest kept.  With ``regular_root=False`` only the proper subtrees are
    regular: the root joins regular children along a random connected graph.
    Unless ``allow_edgeless`` is set every external
    graph is connected.
    """
    rng = _rng(seed)
    if max_leaves < 2:
        raise ValueError("need room for at least two leaves")
    b = _RegularBuilder(rng, allow_edgeless)
    if regular_root:
        best = None
        for _ in range(max(1, attempts)):
            cand = b.build(max_leaves, force_node=True)
            if best is None or cand[1] > best[1]:
                best = cand
        tree = best[0]
    else:
        k = rng.randint(2, min(4, max_leaves))
        sizes = _composition(max_leaves, k, rng)
        kids = [b.build(s)[0] for s in sizes]
        tree = Node(tuple(kids), random_connected_graph(k, rng))
    return relabel_leaves(tree)


def random_tree(leaves: int, seed=None, enrichment: str = "regular") -> Tree:
    if enrichment == "regular":
        return random_regular_tree(leaves, seed)
    if enrichment == "connected":
        return random_connected_tree(leaves, seed)
    raise ValueError(f"unknown enrichment {enrichment!r}; expected one of {ENRICHMENTS}")


def relabel_leaves(tree: Tree, prefix: str = "v") -> Tree:
    """Rename the leaves ``v1, v2, ...`` from left to right."""
    counter = iter(range(1, 1 << 30))

    def walk(t: Tree) -> Tree:
        if isinstance(t, Leaf):
            return Leaf(f"{prefix}{next(counter)}")
        return Node(tuple(walk(c) for c in t.children), t.graph)

    return walk(tree)
