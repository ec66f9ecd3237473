import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spectral_operad.colorings import coloring_from_tree
from spectral_operad.dsl import parse_tree
from spectral_operad.errors import InexactDivisionError, RegularityError
from spectral_operad.graphs import (
    SimpleGraph, adjacency_matrix, complete, cycle, empty, laplacian_matrix, path,
)
from spectral_operad.operad import OrderedAssembly, compose, eval_tree
from spectral_operad.polynomials import (
    BivarPoly, _checked_div, adjacency_charpoly, assembly_charpoly, bareiss_det, chen_rhs,
    charpoly_symbolic, faddeev_leverrier, format_poly, gen_charpoly, gen_charpoly_colored,
    gen_charpoly_iterated, gen_charpoly_pair, laplacian_charpoly, linear_factor, parse_poly,
    poly_divides, specializations,
)
from spectral_operad.random_trees import random_connected_graph, random_regular_tree

X, T = BivarPoly.x(), BivarPoly.t()
ONE = BivarPoly.const(1)


def test_ring_basics():
    p = (X + T) ** 2 - ONE
    assert p == X * X + 2 * X * T + T * T - 1
    assert p.degree_x() == 2 and p.degree_t() == 2
    assert p(1, 1) == 3
    assert p.substitute(t=0) == X * X - 1
    assert p.shift_x(T) == (X + 2 * T) ** 2 - 1
    q, r = p.divmod(X + T - 1)
    assert q == X + T + 1 and r.is_zero()
    with pytest.raises(ValueError):
        BivarPoly({(-1, 0): 1})


def test_exact_div_rejects_remainder():
    with pytest.raises(ArithmeticError):
        (X * X + 1).exact_div(X + 1)


def test_format_and_parse():
    assert format_poly(gen_charpoly(complete(2))) == "x^2 + 2*x*t - 1 + t^2"
    assert format_poly(BivarPoly()) == "0"
    p = BivarPoly({(2, 0): Fraction(1, 3), (0, 1): -7, (0, 0): Fraction(-5, 2)})
    assert format_poly(p) == "1/3*x^2 - 5/2 - 7*t"
    assert parse_poly(format_poly(p)) == p
    assert parse_poly("x^2 + 2*x*t - 1 + t^2") == gen_charpoly(complete(2))
    with pytest.raises(ValueError):
        parse_poly("x^^2")


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.tuples(st.integers(0, 5), st.integers(0, 5)),
                       st.fractions(max_denominator=50), max_size=8))
def test_format_round_trip(coeffs):
    p = BivarPoly(coeffs)
    assert parse_poly(format_poly(p)) == p


def test_bareiss_small():
    assert bareiss_det([[2, 1], [1, 3]]) == 5
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([]) == 1


def test_gen_charpoly_examples():
    assert gen_charpoly(SimpleGraph(1)) == X
    assert gen_charpoly(complete(2)) == (X + T) ** 2 - 1
    assert gen_charpoly(empty(3)) == X ** 3


@pytest.mark.parametrize("seed", range(12))
def test_kronecker_matches_symbolic(seed):
    rng = random.Random(seed)
    g = random_connected_graph(rng.randint(1, 7), rng, p=0.4)
    a = adjacency_matrix(g).astype(int).tolist()
    assert gen_charpoly(g) == charpoly_symbolic(a, g.valencies())


def test_kronecker_handles_signed_entries():
    m = [[0, -3, 5], [-3, 2, 0], [5, 0, -1]]
    e = [4, -2, 7]
    from spectral_operad.polynomials import _kronecker_charpoly
    assert _kronecker_charpoly(m, e) == charpoly_symbolic(m, e)


@pytest.mark.parametrize("seed", range(12))
def test_specializations(seed, small_graph):
    rng = random.Random(seed)
    g = small_graph if seed == 0 else random_connected_graph(rng.randint(2, 9), rng)
    adj, lap = specializations(gen_charpoly(g), g.n)
    assert adj == adjacency_charpoly(g)
    assert lap == laplacian_charpoly(g)
    roots = np.sort(np.roots([float(c) for c in reversed(adj)]).real)
    assert np.allclose(roots, np.linalg.eigvalsh(adjacency_matrix(g)), atol=1e-6)


def test_faddeev_leverrier():
    assert faddeev_leverrier([[2, 1], [1, 2]]) == [3, -4, 1]
    assert faddeev_leverrier(laplacian_matrix(complete(3)).tolist()) == [0, 9, -6, 1]


def test_assembly_product():
    a = OrderedAssembly.of([complete(3), path(3), SimpleGraph(1)])
    from spectral_operad.graphs import disjoint_union
    assert assembly_charpoly(a) == gen_charpoly(disjoint_union(a.components))


def test_pair_polynomial_examples():
    h = cycle(5)
    singles = OrderedAssembly.of([SimpleGraph(1)] * 5)
    assert gen_charpoly_pair(singles, h) == gen_charpoly(h)
    blocks = OrderedAssembly.of([complete(3), cycle(4)])
    assert gen_charpoly_pair(blocks, empty(2)) == (X - 2 + 2 * T) * (X - 2 + 2 * T)
    two = OrderedAssembly.of([complete(2), complete(2)])
    assert gen_charpoly_pair(two, complete(2)) == (X + 3 * T - 1) ** 2 - 4
    with pytest.raises(RegularityError):
        gen_charpoly_pair(OrderedAssembly.of([path(3), complete(2)]), complete(2))


def test_chen_examples():
    singles = OrderedAssembly.of([SimpleGraph(1)] * 2)
    assert chen_rhs(singles, complete(2)) == gen_charpoly(complete(2))
    two = OrderedAssembly.of([complete(2), complete(2)])
    assert chen_rhs(two, complete(2)) == gen_charpoly(complete(4))
    worked = OrderedAssembly.of([complete(3), complete(2), complete(4)])
    log = []
    assert chen_rhs(worked, path(3), log) == gen_charpoly(compose(worked, path(3)))
    assert len(log) == 3 and all(r.is_zero() for _, r in log)


def test_chen_with_disconnected_h():
    a = OrderedAssembly.of([cycle(4), complete(3), complete(2)])
    h = SimpleGraph(3, [(0, 1)])
    assert chen_rhs(a, h) == gen_charpoly(compose(a, h))


def test_inexact_division_is_reported():
    with pytest.raises(InexactDivisionError):
        _checked_div(X * X + T, X + 1, None)


def test_iterated_and_colored(worked, k4_tree):
    direct = gen_charpoly(eval_tree(worked))
    assert gen_charpoly_iterated(worked) == direct
    assert gen_charpoly_colored(coloring_from_tree(worked)) == direct
    assert gen_charpoly_iterated(k4_tree) == gen_charpoly(complete(4))
    assert gen_charpoly_colored(coloring_from_tree(k4_tree)) == gen_charpoly(complete(4))
    flat = parse_tree("(a,b,c;1-2,2-3)")
    assert gen_charpoly_iterated(flat) == gen_charpoly(path(3))
    assert gen_charpoly_iterated(parse_tree("a")) == X


@pytest.mark.parametrize("seed", range(10))
def test_iterated_random(seed):
    t = random_regular_tree(12, seed, regular_root=seed % 2 == 0)
    direct = gen_charpoly(eval_tree(t))
    log = []
    assert gen_charpoly_iterated(t, log) == direct
    assert all(r.is_zero() for _, r in log)
    assert gen_charpoly_colored(coloring_from_tree(t)) == direct


def test_linear_factor_divides_regular():
    for g, r in [(complete(4), 3), (cycle(6), 2), (empty(3), 0), (SimpleGraph(1), 0)]:
        assert poly_divides(linear_factor(r, 0), gen_charpoly(g))
    assert linear_factor(2, 3) == X - 2 + 5 * T


def test_poly_divides():
    p = X + T
    assert poly_divides(p, p)
    assert poly_divides(p, p * (X - 1))
    assert not poly_divides(X - 1, X * X + T)
    with pytest.raises(ValueError):
        poly_divides(BivarPoly(), X)


def test_poset_morphism_chain():
    # a1 = four singletons divides a2 = (K2, K2) divides a3 = (K4)
    singles = OrderedAssembly.of([SimpleGraph(1)] * 4)
    pairs = OrderedAssembly.of([complete(2), complete(2)])
    coarse = gen_charpoly_pair(singles, complete(4))
    fine = gen_charpoly_pair(pairs, complete(2))
    assert poly_divides(fine, coarse)
