"""Edge colourings that encode a factorization level by level.

The colour of an edge says at which composition depth it was created.  An
admissible colouring carries the same information as an enriched tree, so
the spectral formulas can be driven by the colouring alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .combinatorics import Leaf, Tree, index_tree
from .errors import AdmissibilityError
from .graphs import SimpleGraph, _data_rows, components, is_connected, regularity
from .operad import Factor, _require_graph, eval_tree, quotient
from .spectra import (
    DEFAULT_TOL, SpectrumWord, adjacency_from_factors, laplacian_from_factors,
)


@dataclass(frozen=True)
class EdgeColoring:
    graph: SimpleGraph
    colors: Mapping[tuple[int, int], int]

    def __post_init__(self):
        cols = {}
        for e, c in dict(self.colors).items():
            i, j = e
            key = (min(i, j), max(i, j))
            if key not in self.graph.edges:
                raise ValueError(f"coloured pair {key} is not an edge")
            if int(c) < 1:
                raise ValueError(f"colours are positive integers, got {c} on {key}")
            cols[key] = int(c)
        missing = self.graph.edges - cols.keys()
        if missing:
            raise ValueError(f"uncoloured edges: {sorted(missing)}")
        object.__setattr__(self, "colors", cols)

    @property
    def max_color(self) -> int:
        return max(self.colors.values(), default=0)

    def color(self, i: int, j: int) -> int:
        return self.colors[(min(i, j), max(i, j))]

    def __hash__(self):
        return hash((self.graph, tuple(sorted(self.colors.items()))))


def coloring_from_tree(tree: Tree) -> EdgeColoring:
    """Colour each edge by one plus the depth of the vertex where it was created."""
    idx = index_tree(tree)
    colors: dict[tuple[int, int], int] = {}
    for v, t in enumerate(idx.subtrees):
        if isinstance(t, Leaf):
            continue
        spans = [idx.leaf_span[c] for c in idx.children[v]]
        for r, s in _require_graph(t).edges:
            for x in spans[r]:
                for y in spans[s]:
                    colors[(min(x, y), max(x, y))] = idx.depth[v] + 1
    return EdgeColoring(eval_tree(tree), colors)


def level_subgraph(c: EdgeColoring, i: int) -> SimpleGraph:
    """g(i): the graph keeping only edges of colour at least ``i``."""
    if i < 1:
        raise ValueError(f"levels start at 1, got {i}")
    return SimpleGraph(c.graph.order, [e for e, col in c.colors.items() if col >= i])


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    condition: int | None = None    # 1: divisibility chain, 2: local colour step
    level: int | None = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "admissible"
        if self.condition == 1:
            return f"g({self.level}) does not divide g({self.level - 1})"
        return (f"vertex {self.witness} has an edge of colour {self.level} "
                f"but none of colour {self.level - 1}")


def is_admissible(c: EdgeColoring) -> Admissibility:
    # the local condition first: its witness is the more specific one
    incident: list[set[int]] = [set() for _ in range(c.graph.n)]
    for (x, y), col in c.colors.items():
        incident[x].add(col)
        incident[y].add(col)
    for v, cols in enumerate(incident):
        for col in sorted(cols):
            if col >= 2 and col - 1 not in cols:
                return Admissibility(False, 2, col, v)
    # every level in 2..k, including colours that never occur
    for i in range(2, c.max_color + 1):
        fine, coarse = level_subgraph(c, i), level_subgraph(c, i - 1)
        if quotient(components(fine), fine, coarse) is None:
            return Admissibility(False, 1, i, (i, i - 1))
    return Admissibility(True)


def _require_admissible(c: EdgeColoring) -> None:
    res = is_admissible(c)
    if not res:
        raise AdmissibilityError(str(res))


def quotient_data(c: EdgeColoring, i: int) -> list[Factor]:
    """The composition steps of colour ``i``, ordered by smallest vertex.

    Each step groups components of g(i+1) along one connected component ``h``
    of g(i)/g(i+1).  ``external_valency`` is the number of vertices outside the
    step adjacent to all of it; ``graph`` is the step's graph (regular or not).
    Single-block components are dropped except at level 1.
    """
    _require_admissible(c)
    g = c.graph
    fine, coarse = level_subgraph(c, i + 1), level_subgraph(c, i)
    blocks = components(fine)
    h_all = quotient(blocks, fine, coarse)
    if h_all is None:
        raise AdmissibilityError(f"g({i + 1}) does not divide g({i})")
    nb = g.neighbours()
    out = []
    for comp in components(h_all):
        if len(comp) == 1 and i > 1:
            continue
        verts = [v for b in comp for v in blocks[b]]
        inside = set(verts)
        common = set.intersection(*(nb[v] for v in verts)) - inside
        pos = {b: k for k, b in enumerate(comp)}
        h = SimpleGraph(len(comp), [(pos[a], pos[b]) for a, b in h_all.edges if a in pos and b in pos])
        out.append(Factor(
            h=h,
            blocks=tuple(fine.induced(blocks[b]) for b in comp),
            external_valency=len(common),
            graph=coarse.induced(verts),
            vertices=tuple(verts),
            level=i,
        ))
    return out


def colored_factors(c: EdgeColoring) -> list[Factor]:
    _require_admissible(c)
    return [f for i in range(1, max(c.max_color, 1) + 1) for f in quotient_data(c, i)]


def colored_regularities(c: EdgeColoring) -> list[int | None]:
    """r_i of each step, in the order of :func:`colored_factors`."""
    return [regularity(f.graph) for f in colored_factors(c)]


def colored_adjacency_spectrum(c: EdgeColoring, tol: float = DEFAULT_TOL) -> SpectrumWord:
    return adjacency_from_factors(colored_factors(c), tol)


def colored_laplacian_spectrum(c: EdgeColoring, tol: float = DEFAULT_TOL) -> SpectrumWord:
    if not is_connected(c.graph):
        raise ValueError("the coloured Laplacian formula needs a connected graph")
    return laplacian_from_factors(colored_factors(c), tol)


# -- text format -------------------------------------------------------------------

def format_coloring(c: EdgeColoring) -> str:
    lines = [str(c.graph.n)]
    lines.extend(f"{i} {j} {c.colors[(i, j)]}" for i, j in c.graph.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, graph: SimpleGraph | None = None) -> EdgeColoring:
    """Read ``i j color`` lines, optionally preceded by a graph in edge-list form.

    Without ``graph`` the text must start with the vertex count; plain ``i j``
    lines add edges and ``i j color`` lines add coloured edges.
    """
    rows = _data_rows(text)
    edges: list[tuple[int, int]] = []
    colors: dict[tuple[int, int], int] = {}
    if graph is None:
        if not rows or len(rows[0]) != 1:
            raise ValueError("coloring text must start with the vertex count")
        n, rows = rows[0][0], rows[1:]
    else:
        n = graph.order
        edges.extend(graph.edges)
    for r in rows:
        if len(r) == 2:
            edges.append((r[0], r[1]))
        elif len(r) == 3:
            key = (min(r[0], r[1]), max(r[0], r[1]))
            if key in colors:
                raise ValueError(f"edge {key} coloured twice")
            colors[key] = r[2]
            edges.append(key)
        else:
            raise ValueError(f"expected 'i j' or 'i j color', got {r}")
    g = SimpleGraph(n, edges)
    if graph is not None and g.edges != graph.edges:
        raise ValueError("coloured pairs must be edges of the graph")
    return EdgeColoring(g, colors)
