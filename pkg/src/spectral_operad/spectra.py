"""Spectrum words, a Jacobi eigensolver, and the spectral factorizations.

A spectrum is kept as a commutative word: a sorted multiset of real values
with multiplicities.  Values closer than the grouping tolerance are taken to
be the same letter, since eigenvalues are only known to floating point.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .combinatorics import Tree
from .errors import ConnectivityError, MissingFactorError, RegularityError
from .graphs import (
    SimpleGraph, adjacency_matrix, external_valencies, is_connected, laplacian_matrix,
    regularity,
)
from .operad import Factor, OrderedAssembly, tree_factors

DEFAULT_TOL = 1e-9


class SpectrumWord:
    """A finite multiset of reals, stored as sorted ``(value, multiplicity)`` letters."""

    __slots__ = ("_letters", "tol")

    def __init__(self, values: Iterable[float] = (), tol: float = DEFAULT_TOL):
        self.tol = tol
        self._letters = _group(((float(v), 1) for v in values), tol)

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[float, int]], tol: float = DEFAULT_TOL) -> "SpectrumWord":
        w = cls.__new__(cls)
        w.tol = tol
        w._letters = _group(((float(v), int(m)) for v, m in letters), tol)
        return w

    @property
    def letters(self) -> tuple[tuple[float, int], ...]:
        return self._letters

    def values(self) -> list[float]:
        return [v for v, m in self._letters for _ in range(m)]

    def multiplicity(self, value: float) -> int:
        i = self._find(value)
        return 0 if i is None else self._letters[i][1]

    def profile(self) -> tuple[int, ...]:
        return tuple(m for _, m in self._letters)

    def trace(self) -> float:
        return math.fsum(v * m for v, m in self._letters)

    def __len__(self) -> int:
        return sum(m for _, m in self._letters)

    def __iter__(self):
        return iter(self._letters)

    def __mul__(self, other: "SpectrumWord") -> "SpectrumWord":
        return word_mul(self, other)

    def __truediv__(self, value: float) -> "SpectrumWord":
        return word_div(self, value)

    def __neg__(self) -> "SpectrumWord":
        return self.map(lambda v: -v)

    def shift(self, s: float) -> "SpectrumWord":
        return self.map(lambda v: v + s)

    def map(self, f) -> "SpectrumWord":
        return SpectrumWord.from_letters(((f(v), m) for v, m in self._letters), self.tol)

    def _find(self, value: float) -> int | None:
        best, best_d = None, self.tol
        for i, (v, _) in enumerate(self._letters):
            d = abs(v - value)
            if d <= best_d:
                best, best_d = i, d
        return best

    def isclose(self, other: "SpectrumWord", atol: float = 1e-7) -> bool:
        """Same multiplicity profile and letters within ``atol`` of each other."""
        if self.profile() != other.profile():
            return False
        return all(abs(a - b) <= atol for (a, _), (b, _) in zip(self._letters, other._letters))

    def max_deviation(self, other: "SpectrumWord") -> float:
        """Largest gap between the sorted expanded values (inf if the sizes differ)."""
        a, b = self.values(), other.values()
        if len(a) != len(b):
            return math.inf
        return max((abs(x - y) for x, y in zip(a, b)), default=0.0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpectrumWord):
            return NotImplemented
        return self.isclose(other, atol=max(self.tol, other.tol))

    __hash__ = None

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"SpectrumWord('{format_word(self)}')"


def _group(pairs: Iterable[tuple[float, int]], tol: float) -> tuple[tuple[float, int], ...]:
    # letters within tol of the running group mean are merged
    items = sorted(pairs)
    out: list[list[float]] = []
    for v, m in items:
        if m <= 0:
            continue
        if out and abs(v - out[-1][0]) <= tol:
            mean, mult = out[-1]
            out[-1] = [(mean * mult + v * m) / (mult + m), mult + m]
        else:
            out.append([v, m])
    return tuple((float(v), int(m)) for v, m in out)


def word_mul(w1: SpectrumWord, w2: SpectrumWord) -> SpectrumWord:
    return SpectrumWord.from_letters(w1.letters + w2.letters, w1.tol)


def word_product(words: Iterable[SpectrumWord], tol: float = DEFAULT_TOL) -> SpectrumWord:
    letters: list[tuple[float, int]] = []
    for w in words:
        letters.extend(w.letters)
    return SpectrumWord.from_letters(letters, tol)


def word_div(w: SpectrumWord, value: float) -> SpectrumWord:
    """Remove one occurrence of the letter nearest to ``value``."""
    i = w._find(value)
    if i is None:
        raise MissingFactorError(f"{value!r} is not a letter of {format_word(w)}")
    letters = list(w.letters)
    v, m = letters[i]
    if m == 1:
        del letters[i]
    else:
        letters[i] = (v, m - 1)
    return SpectrumWord.from_letters(letters, w.tol)


def phi_shift(w: SpectrumWord, s: float) -> SpectrumWord:
    """Drop one zero letter (if there is one), then add ``s`` to every letter."""
    if w._find(0.0) is not None:
        w = word_div(w, 0.0)
    return w.shift(s)


def mu_shift(w: SpectrumWord, q: float, s: float) -> SpectrumWord:
    """Drop one letter ``q`` (which must be present), then add ``s`` to every letter."""
    return word_div(w, q).shift(s)


def format_word(w: SpectrumWord) -> str:
    toks = []
    for v, m in w.letters:
        if abs(v) <= w.tol:
            v = 0.0
        s = f"{v:.12g}"
        if s == "-0":
            s = "0"
        toks.append(s if m == 1 else f"{s}^{m}")
    return " ".join(toks)


def parse_word(text: str, tol: float = DEFAULT_TOL) -> SpectrumWord:
    letters = []
    for tok in text.split():
        v, _, m = tok.partition("^")
        letters.append((float(v), int(m) if m else 1))
    return SpectrumWord.from_letters(letters, tol)


# -- dense symmetric eigensolver ---------------------------------------------------

def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # n - 1 rounds of disjoint pairs covering every pair once (circle method)
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(m: np.ndarray, rel_tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.

    Each sweep visits every off-diagonal pair once, in rounds of disjoint pairs
    that are rotated together.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if n == 0:
        return np.zeros(0)
    norm = np.linalg.norm(a)
    if n == 1 or norm == 0.0:
        return np.sort(np.diag(a))
    rounds = _round_robin(n)
    tiny = 1e-300 * norm
    for _ in range(max_sweeps):
        if np.linalg.norm(a - np.diag(np.diag(a))) < rel_tol * norm:
            return np.sort(np.diag(a))
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > tiny
            if not active.any():
                continue
            safe = np.where(active, apq, 1.0)
            theta = (a[q, q] - a[p, p]) / (2.0 * safe)
            # for huge theta, t ~ 1/(2 theta) and the square root would overflow
            big = np.abs(theta) > 1e150
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         np.sign(theta + (theta == 0)) / (np.abs(theta) + np.sqrt(np.where(big, 0.0, theta) ** 2 + 1.0)))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            a[p, q] = 0.0
            a[q, p] = 0.0
    raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")


def check_symmetric(m: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.T)) > atol:
        raise ValueError("matrix is not symmetric")
    return m


def eig_sym(m: np.ndarray, tol: float = DEFAULT_TOL) -> SpectrumWord:
    return SpectrumWord(jacobi_eigenvalues(check_symmetric(m)), tol)


def nullity(m: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    return eig_sym(m, tol).multiplicity(0.0)


# -- reduced matrices ------------------------------------------------------------------

def _rho(sizes: Sequence[int], h: SimpleGraph) -> np.ndarray:
    k = len(sizes)
    if len(h) != k:
        raise ValueError(f"external graph has {len(h)} vertices, expected {k}")
    r = np.zeros((k, k))
    for i, j in h.edges:
        r[i, j] = r[j, i] = math.sqrt(sizes[i] * sizes[j])
    return r


def rho_matrix(partition, h: SimpleGraph) -> np.ndarray:
    """``sqrt(n_s n_t)`` on the edges of ``h``, zero elsewhere."""
    sizes = partition.sizes if hasattr(partition, "sizes") else tuple(partition)
    return _rho(sizes, h)


def _regularities(blocks: Sequence[SimpleGraph]) -> list[int]:
    regs = [regularity(b) for b in blocks]
    for j, r in enumerate(regs):
        if r is None:
            raise RegularityError(f"component {j + 1} is not regular")
    return regs


def _reduced_adjacency(sizes, regs, h) -> np.ndarray:
    return _rho(sizes, h) + np.diag(np.asarray(regs, dtype=float))


def _script_laplacian(sizes, h) -> np.ndarray:
    return np.diag(np.asarray(external_valencies(sizes, h), dtype=float)) - _rho(sizes, h)


def reduced_adjacency(a: OrderedAssembly, h: SimpleGraph) -> np.ndarray:
    """Block regularities on the diagonal, ``sqrt(n_i n_j)`` on the edges of ``h``."""
    return _reduced_adjacency(a.sizes, _regularities(a.components), h)


def script_laplacian(a: OrderedAssembly, h: SimpleGraph) -> np.ndarray:
    """Block external valencies on the diagonal, ``-sqrt(n_i n_j)`` on the edges of ``h``."""
    return _script_laplacian(a.sizes, h)


# -- one level -------------------------------------------------------------------------

def adjacency_single_level(a: OrderedAssembly, h: SimpleGraph, tol: float = DEFAULT_TOL) -> SpectrumWord:
    regs = _regularities(a.components)
    words = [eig_sym(adjacency_matrix(g), tol) / r for g, r in zip(a.components, regs)]
    words.append(eig_sym(_reduced_adjacency(a.sizes, regs, h), tol))
    return word_product(words, tol)


def laplacian_single_level(a: OrderedAssembly, h: SimpleGraph, tol: float = DEFAULT_TOL) -> SpectrumWord:
    ext = external_valencies(a.sizes, h)
    words = [phi_shift(eig_sym(laplacian_matrix(g), tol), N) for g, N in zip(a.components, ext)]
    words.append(eig_sym(_script_laplacian(a.sizes, h), tol))
    return word_product(words, tol)


# -- iterated over factorizations ------------------------------------------------------

def _factor_regs(f: Factor) -> list[int]:
    regs = list(f.block_regularities)
    for j, r in enumerate(regs):
        if r is None:
            raise RegularityError(f"block {j + 1} of the step at level {f.level} is not regular")
    return regs


def _require_regular(f: Factor) -> int:
    if f.regularity is None:
        raise RegularityError(f"the graph of the step at level {f.level} is not regular")
    return f.regularity


def adjacency_from_factors(factors: Sequence[Factor], tol: float = DEFAULT_TOL) -> SpectrumWord:
    word = word_product((eig_sym(_reduced_adjacency(f.sizes, _factor_regs(f), f.h), tol)
                         for f in factors), tol)
    for f in factors:
        if not f.is_root:
            word = word / _require_regular(f)
    return word


def laplacian_from_factors(factors: Sequence[Factor], tol: float = DEFAULT_TOL) -> SpectrumWord:
    words = []
    for f in factors:
        if not is_connected(f.h):
            raise ConnectivityError(f"external graph at level {f.level} is disconnected")
        w = eig_sym(_script_laplacian(f.sizes, f.h), tol)
        words.append(w if f.is_root else phi_shift(w, f.external_valency))
    return word_product(words, tol)


def complement_adjacency_from_factors(factors: Sequence[Factor], n: int,
                                      tol: float = DEFAULT_TOL) -> SpectrumWord:
    words = []
    root_reg = None
    for f in factors:
        r = _require_regular(f)
        if f.is_root:
            root_reg = r
        w = eig_sym(_reduced_adjacency(f.sizes, _factor_regs(f), f.h), tol) / r
        words.append(w.map(lambda v: -1.0 - v))
    words.append(SpectrumWord([n - root_reg - 1], tol))
    return word_product(words, tol)


def complement_laplacian_from_factors(factors: Sequence[Factor], n: int,
                                      tol: float = DEFAULT_TOL) -> SpectrumWord:
    words = [SpectrumWord([0.0], tol)]
    for f in factors:
        if not is_connected(f.h):
            raise ConnectivityError(f"external graph at level {f.level} is disconnected")
        w = -eig_sym(_script_laplacian(f.sizes, f.h), tol)
        words.append(phi_shift(w, n if f.is_root else n - f.external_valency))
    return word_product(words, tol)


def _factors(tree: Tree) -> tuple[Factor, ...]:
    factors = tree_factors(tree)
    if not factors:
        raise ValueError("the tree is a single leaf; there is nothing to factor")
    return factors


def adjacency_iterated(tree: Tree, tol: float = DEFAULT_TOL) -> SpectrumWord:
    """Adjacency spectrum of the tree's graph from the reduced matrices at each vertex."""
    return adjacency_from_factors(_factors(tree), tol)


def laplacian_iterated(tree: Tree, tol: float = DEFAULT_TOL) -> SpectrumWord:
    return laplacian_from_factors(_factors(tree), tol)


def complement_adjacency_iterated(tree: Tree, tol: float = DEFAULT_TOL) -> SpectrumWord:
    factors = _factors(tree)
    return complement_adjacency_from_factors(factors, factors[0].graph.n, tol)


def complement_laplacian_iterated(tree: Tree, tol: float = DEFAULT_TOL) -> SpectrumWord:
    factors = _factors(tree)
    return complement_laplacian_from_factors(factors, factors[0].graph.n, tol)
