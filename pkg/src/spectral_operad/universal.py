"""Universal adjacency matrices U = aA + bI + cJ + dD and their factorizations.

The main function of a graph is Gamma_g(x) = 1^T (xI - U(g))^{-1} 1.  The
characteristic polynomial identity is checked numerically, point by point, in
extended precision (mpmath); exact reference polynomials come from integer
arithmetic after clearing the (dyadic) denominators of the parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import mpmath
import numpy as np

from .colorings import colored_factors
from .combinatorics import Tree
from .errors import MissingFactorError, NearPoleError, RegularityError, SpectralOperadError
from .graphs import SimpleGraph, adjacency_matrix, external_valencies, is_connected, regularity
from .operad import Factor, OrderedAssembly, compose, tree_factors
from .polynomials import faddeev_leverrier
from .spectra import DEFAULT_TOL, SpectrumWord, eig_sym, mu_shift, word_product

POLE_GUARD = 1e-8
MP_DPS = 50


@dataclass(frozen=True)
class UniversalParams:
    alpha: float = 1.0
    beta: float = 0.0
    gamma: float = 0.0
    delta: float = 0.0

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")

    @classmethod
    def parse(cls, text: str) -> "UniversalParams":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated numbers, got {text!r}")
        return cls(*parts)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def exact(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v) for v in self.as_tuple())

    def q(self, reg: int, n: int) -> float:
        """(alpha + delta) reg + beta + gamma n: the eigenvalue of U(g) on the all-ones vector."""
        return (self.alpha + self.delta) * reg + self.beta + self.gamma * n

    def hypothesis(self, connected: bool) -> bool:
        """Whether the all-ones eigenvalue is guaranteed simple."""
        return self.alpha * self.gamma > 0 or (self.gamma == 0 and connected)


ADJACENCY = UniversalParams(1, 0, 0, 0)
LAPLACIAN = UniversalParams(-1, 0, 0, 1)
SEIDEL = UniversalParams(-2, -1, 1, 0)


def universal_matrix(g: SimpleGraph, params: UniversalParams) -> np.ndarray:
    a, b, c, d = params.as_tuple()
    n = g.n
    return (a * adjacency_matrix(g) + b * np.eye(n) + c * np.ones((n, n))
            + d * np.diag(np.asarray(g.valencies(), dtype=float)).reshape(n, n))


def _exact_universal(g: SimpleGraph, params: UniversalParams) -> list[list[Fraction]]:
    a, b, c, d = params.exact()
    adj = adjacency_matrix(g)
    deg = g.valencies()
    return [[a * int(adj[i, j]) + c + ((b + d * deg[i]) if i == j else 0) for j in range(g.n)]
            for i in range(g.n)]


def universal_charpoly_exact(g: SimpleGraph, params: UniversalParams) -> list[Fraction]:
    """det(xI - U(g)), constant term first, exactly for the parameters' float values."""
    m = _exact_universal(g, params)
    n = g.n
    den = reduce(math.lcm, (v.denominator for row in m for v in row), 1)
    scaled = [[int(v * den) for v in row] for row in m]
    p = faddeev_leverrier(scaled)
    # charpoly(M) coefficient m equals charpoly(den*M) coefficient m over den^(n-m)
    return [Fraction(p[k], den ** (n - k)) for k in range(n + 1)]


# -- main function -----------------------------------------------------------------

def main_function(m: np.ndarray, u=None, v=None, x: float = 0.0) -> float:
    """v^T (xI - M)^{-1} u, with all-ones vectors by default."""
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    u = np.ones(n) if u is None else np.asarray(u, dtype=float)
    v = np.ones(n) if v is None else np.asarray(v, dtype=float)
    eig = np.linalg.eigvalsh(m)
    if n and np.min(np.abs(eig - x)) < POLE_GUARD:
        raise NearPoleError(f"x = {x!r} is within {POLE_GUARD} of an eigenvalue")
    return float(v @ np.linalg.solve(x * np.eye(n) - m, u))


class _MPGraph:
    """U(g) in extended precision, with its spectrum for the pole guard."""

    def __init__(self, g: SimpleGraph, params: UniversalParams):
        self.n = g.n
        self.u = mpmath.matrix([[mpmath.mpf(v) for v in row] for row in _exact_universal_float(g, params)])
        self.eig = np.linalg.eigvalsh(universal_matrix(g, params)) if g.n else np.zeros(0)

    def shifted(self, z):
        return z * mpmath.eye(self.n) - self.u

    def charpoly(self, z):
        return mpmath.det(self.shifted(z))

    def gamma(self, z):
        if self.n and min(abs(complex(z) - e) for e in self.eig) < POLE_GUARD:
            raise NearPoleError(f"{z} is near a pole of the main function")
        ones = mpmath.matrix([1] * self.n)
        sol = mpmath.lu_solve(self.shifted(z), ones)
        val = mpmath.fsum(sol)
        if abs(val) < POLE_GUARD:
            raise NearPoleError(f"the main function nearly vanishes at {z}")
        return val


def _exact_universal_float(g, params):
    return [[mpmath.mpf(v.numerator) / v.denominator for v in row] for row in _exact_universal(g, params)]


def _u_gamma_det(f: Factor, params: UniversalParams, y, cache) -> object:
    """det U_Gamma(a, h)(y) = det(diag(1/Gamma_i(y - d N_i)) - aA(h) - cJ + cI)."""
    a, _, c, d = params.as_tuple()
    k = len(f.blocks)
    ah = adjacency_matrix(f.h)
    m = mpmath.matrix(k, k)
    for i in range(k):
        for j in range(k):
            m[i, j] = -a * int(ah[i, j]) - c + (c if i == j else 0)
    for i, (b, N) in enumerate(zip(f.blocks, f.block_valencies)):
        m[i, i] += 1 / cache(b).gamma(y - mpmath.mpf(d) * N)
    return mpmath.det(m)


def _graph_cache(params):
    store: dict = {}

    def get(g: SimpleGraph) -> _MPGraph:
        if g not in store:
            store[g] = _MPGraph(g, params)
        return store[g]
    return get


def rhs_from_factors(factors: Sequence[Factor], params: UniversalParams, x, cache=None):
    """Product over steps of det U_Gamma at x - d N, times Gamma of every non-root step."""
    cache = cache or _graph_cache(params)
    d = params.delta
    out = mpmath.mpf(1)
    for f in factors:
        y = x - mpmath.mpf(d) * f.external_valency
        out *= _u_gamma_det(f, params, y, cache)
        if not f.is_root:
            out *= cache(f.graph).gamma(y)
    return out


def rhs_single(a: OrderedAssembly, h: SimpleGraph, params: UniversalParams, x, cache=None):
    """prod_i Phi_i(x - d N_i) Gamma_i(x - d N_i) times det U_Gamma(a, h)(x)."""
    cache = cache or _graph_cache(params)
    d = params.delta
    root = _root_factor(a, h)
    out = _u_gamma_det(root, params, x, cache)
    for b, N in zip(a.components, root.block_valencies):
        gb = cache(b)
        z = x - mpmath.mpf(d) * N
        out *= gb.charpoly(z) * gb.gamma(z)
    return out


def _root_factor(a: OrderedAssembly, h: SimpleGraph) -> Factor:
    g = compose(a, h)
    return Factor(h=h, blocks=a.components, external_valency=0, graph=g,
                  vertices=tuple(range(g.n)), level=1)


# -- reports -----------------------------------------------------------------------

@dataclass
class SampleResult:
    x: float
    lhs: float | None = None
    rhs: float | None = None
    rel_dev: float | None = None
    skipped: str | None = None


@dataclass
class CharpolyReport:
    samples: list[SampleResult] = field(default_factory=list)
    exact: list[Fraction] = field(default_factory=list)
    interpolated: list[float] = field(default_factory=list)
    interp_rel_error: float = math.nan

    @property
    def clean(self) -> list[SampleResult]:
        return [s for s in self.samples if s.skipped is None]

    @property
    def max_rel_dev(self) -> float:
        return max((s.rel_dev for s in self.clean), default=0.0)

    def ok(self, point_tol: float = 1e-8, coeff_tol: float = 1e-6) -> bool:
        return self.max_rel_dev <= point_tol and self.interp_rel_error <= coeff_tol

    def to_dict(self) -> dict:
        return {
            "samples": [s.__dict__ for s in self.samples],
            "max_rel_dev": self.max_rel_dev,
            "exact": [str(c) for c in self.exact],
            "interpolated": self.interpolated,
            "interp_rel_error": self.interp_rel_error,
        }


def _report(g: SimpleGraph, params: UniversalParams, rhs, points: Sequence[float]) -> CharpolyReport:
    rep = CharpolyReport()
    with mpmath.workdps(MP_DPS):
        lhs_graph = _MPGraph(g, params)
        for x in points:
            s = SampleResult(float(x))
            try:
                r = rhs(mpmath.mpf(x))
            except NearPoleError as exc:
                s.skipped = str(exc)
                rep.samples.append(s)
                continue
            lv = lhs_graph.charpoly(mpmath.mpf(x))
            s.lhs, s.rhs = float(lv), float(r)
            s.rel_dev = float(abs(lv - r) / abs(lv)) if lv != 0 else float(abs(r))
            rep.samples.append(s)
        rep.exact = universal_charpoly_exact(g, params)
        coeffs = interpolate_on_circle(rhs, g.n)
    rep.interpolated = [float(c) for c in coeffs]
    num = math.sqrt(sum(float(abs(c - mpmath.mpf(e.numerator) / e.denominator)) ** 2
                        for c, e in zip(coeffs, rep.exact)))
    den = math.sqrt(sum(float(e) ** 2 for e in rep.exact))
    rep.interp_rel_error = num / den
    return rep


def interpolate_on_circle(f, n: int, radius: float = 1.0) -> list:
    """Coefficients (constant first) of a degree-n polynomial from values on a circle.

    The n + 1 nodes are rotated roots of unity chosen so that none is real, which
    keeps them away from the real poles and zeros of every main function.
    """
    big_n = n + 1
    xs = [radius * mpmath.expj(2 * mpmath.pi * (j + mpmath.mpf(1) / 4) / big_n) for j in range(big_n)]
    vals = [f(x) for x in xs]
    coeffs = []
    for m in range(big_n):
        c = mpmath.fsum(v * x ** (-m) for v, x in zip(vals, xs)) / big_n
        coeffs.append(mpmath.re(c))
    return coeffs


def universal_charpoly_factorized(a: OrderedAssembly, h: SimpleGraph, params: UniversalParams,
                                  sample_points: Sequence[float]) -> CharpolyReport:
    cache = _graph_cache(params)
    return _report(compose(a, h), params, lambda x: rhs_single(a, h, params, x, cache), sample_points)


def universal_charpoly_iterated(tree: Tree, params: UniversalParams,
                                sample_points: Sequence[float]) -> CharpolyReport:
    factors = tree_factors(tree)
    cache = _graph_cache(params)
    return _report(factors[0].graph, params, lambda x: rhs_from_factors(factors, params, x, cache),
                   sample_points)


# -- spectra -----------------------------------------------------------------------

def _pair_matrix(sizes: Sequence[int], regs: Sequence[int], h: SimpleGraph,
                 params: UniversalParams) -> np.ndarray:
    """U(a, h): sqrt(n_i n_j)(a A(h) + c(1 - [i=j])) off the diagonal, p_i on it."""
    a, b, c, d = params.as_tuple()
    k = len(sizes)
    ext = external_valencies(sizes, h)
    ah = adjacency_matrix(h)
    m = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            if i != j:
                m[i, j] = math.sqrt(sizes[i] * sizes[j]) * (a * ah[i, j] + c)
        m[i, i] = a * regs[i] + b + c * sizes[i] + d * (regs[i] + ext[i])
    return m


def universal_reduced(a: OrderedAssembly, h: SimpleGraph, params: UniversalParams) -> np.ndarray:
    return _pair_matrix(a.sizes, _regs(a.components), h, params)


def _regs(blocks) -> list[int]:
    regs = [regularity(b) for b in blocks]
    if any(r is None for r in regs):
        raise RegularityError("every block must be regular")
    return regs


def universal_spectrum_single(a: OrderedAssembly, h: SimpleGraph, params: UniversalParams,
                              tol: float = DEFAULT_TOL) -> SpectrumWord:
    regs = _regs(a.components)
    d = params.delta
    words = []
    for g, r, N in zip(a.components, regs, external_valencies(a.sizes, h)):
        words.append(mu_shift(eig_sym(universal_matrix(g, params), tol), params.q(r, g.n), d * N))
    words.append(eig_sym(_pair_matrix(a.sizes, regs, h, params), tol))
    return word_product(words, tol)


def universal_from_factors(factors: Sequence[Factor], params: UniversalParams,
                           tol: float = DEFAULT_TOL) -> SpectrumWord:
    words = []
    for f in factors:
        regs = list(f.block_regularities)
        if any(r is None for r in regs):
            raise RegularityError(f"a block of the step at level {f.level} is not regular")
        w = eig_sym(_pair_matrix(f.sizes, regs, f.h, params), tol)
        if not f.is_root:
            if f.regularity is None:
                raise RegularityError(f"the graph of the step at level {f.level} is not regular")
            w = mu_shift(w, params.q(f.regularity, f.graph.n), params.delta * f.external_valency)
        words.append(w)
    return word_product(words, tol)


def universal_spectrum_iterated(tree: Tree, params: UniversalParams,
                                tol: float = DEFAULT_TOL) -> SpectrumWord:
    factors = tree_factors(tree)
    if not factors:
        raise ValueError("the tree is a single leaf; there is nothing to factor")
    return universal_from_factors(factors, params, tol)


def q_eigenvalue_check(g: SimpleGraph, params: UniversalParams,
                       tol: float = DEFAULT_TOL) -> tuple[float, bool]:
    """The all-ones eigenvalue q of U(g) and whether it is simple."""
    r = regularity(g)
    if r is None:
        raise RegularityError("q is only defined for regular graphs")
    q = params.q(r, g.n)
    mult = eig_sym(universal_matrix(g, params), tol).multiplicity(q)
    if mult == 0:
        raise MissingFactorError(f"q = {q} is not an eigenvalue of U(g)")
    simple = mult == 1
    if params.hypothesis(g.n > 0 and is_connected(g)) and not simple:
        raise SpectralOperadError(f"q = {q} should be simple but has multiplicity {mult}")
    return q, simple


def universal_colored(c, params: UniversalParams, sample_points: Sequence[float] = (),
                      tol: float = DEFAULT_TOL) -> tuple[CharpolyReport, SpectrumWord]:
    factors = colored_factors(c)
    cache = _graph_cache(params)
    report = _report(c.graph, params, lambda x: rhs_from_factors(factors, params, x, cache), sample_points)
    return report, universal_from_factors(factors, params, tol)
