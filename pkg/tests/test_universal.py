import random
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from spectral_operad.colorings import coloring_from_tree
from spectral_operad.errors import NearPoleError, RegularityError
from spectral_operad.graphs import (
    SimpleGraph, adjacency_matrix, complete, cycle, disjoint_union, laplacian_matrix, path,
)
from spectral_operad.operad import OrderedAssembly, compose, eval_tree
from spectral_operad.random_trees import random_regular_tree
from spectral_operad.spectra import (
    adjacency_iterated, adjacency_single_level, eig_sym, laplacian_iterated,
)
from spectral_operad.universal import (
    ADJACENCY, LAPLACIAN, SEIDEL, UniversalParams, interpolate_on_circle, main_function,
    q_eigenvalue_check, universal_charpoly_exact, universal_charpoly_factorized,
    universal_charpoly_iterated, universal_colored, universal_matrix, universal_spectrum_iterated,
    universal_spectrum_single,
)


def test_params():
    with pytest.raises(ValueError):
        UniversalParams(0, 1, 1, 1)
    assert UniversalParams.parse("2,1,1,1").as_tuple() == (2, 1, 1, 1)
    with pytest.raises(ValueError):
        UniversalParams.parse("1,2,3")
    assert UniversalParams(0.5, 0, 0, 0).exact()[0] == Fraction(1, 2)
    assert UniversalParams(1, 0, 1, 0).q(3, 4) == 7


def test_universal_matrix_specializations(small_graph):
    g = small_graph
    assert np.array_equal(universal_matrix(g, ADJACENCY), adjacency_matrix(g))
    assert np.array_equal(universal_matrix(g, LAPLACIAN), laplacian_matrix(g))
    n = g.n
    seidel = np.ones((n, n)) - np.eye(n) - 2 * adjacency_matrix(g)
    assert np.array_equal(universal_matrix(g, SEIDEL), seidel)


def test_main_function():
    assert main_function(np.zeros((1, 1)), x=2.0) == pytest.approx(0.5)
    assert main_function(adjacency_matrix(complete(2)), x=2.0) == pytest.approx(2.0)
    with pytest.raises(NearPoleError):
        main_function(adjacency_matrix(complete(2)), x=1.0)


def test_exact_charpoly():
    assert universal_charpoly_exact(complete(2), ADJACENCY) == [-1, 0, 1]
    p = universal_charpoly_exact(path(3), UniversalParams(0.5, 0.25, 0, 0))
    m = universal_matrix(path(3), UniversalParams(0.5, 0.25, 0, 0))
    assert np.allclose([float(c) for c in p], np.poly(m)[::-1])


def test_interpolation_recovers_polynomial():
    coeffs = [3, -2, 0, 5]
    f = lambda x: sum(c * x ** k for k, c in enumerate(coeffs))
    with mpmath.workdps(30):
        got = interpolate_on_circle(f, 3)
    assert [float(c) for c in got] == pytest.approx(coeffs, abs=1e-20)


def _points(rng, n=20, bound=8.0):
    return [rng.uniform(-bound, bound) for _ in range(n)]


def test_factorized_charpoly_k4():
    a = OrderedAssembly.of([complete(2), complete(2)])
    rep = universal_charpoly_factorized(a, complete(2), ADJACENCY, _points(random.Random(1)))
    assert len(rep.clean) >= 15
    assert rep.ok()
    assert rep.exact == universal_charpoly_exact(complete(4), ADJACENCY)


def test_factorized_charpoly_singletons(small_graph):
    singles = OrderedAssembly.of([SimpleGraph(1)] * 5)
    rep = universal_charpoly_factorized(singles, small_graph, UniversalParams(2, 1, 0.5, -1),
                                        _points(random.Random(2)))
    assert rep.ok()


def test_near_pole_points_are_skipped():
    a = OrderedAssembly.of([complete(2), complete(2)])
    rep = universal_charpoly_factorized(a, complete(2), ADJACENCY, [1.0, -1.0, 0.3])
    assert any(s.skipped for s in rep.samples)
    assert rep.ok()
    assert "max_rel_dev" in rep.to_dict()


@pytest.mark.parametrize("params", [(1, 0, 0, 0), (2, 1, 1, 1), (-1, 0.5, -2, 3), (1.5, 0, -0.5, 1)])
def test_iterated_charpoly(worked, params):
    rep = universal_charpoly_iterated(worked, UniversalParams(*params), _points(random.Random(3)))
    assert rep.max_rel_dev <= 1e-8
    assert rep.interp_rel_error <= 1e-6


def test_spectrum_single_level():
    a = OrderedAssembly.of([complete(3), complete(2), complete(4)])
    h = path(3)
    assert universal_spectrum_single(a, h, ADJACENCY) == adjacency_single_level(a, h)
    p = UniversalParams(2, 1, 1, 1)
    oracle = eig_sym(universal_matrix(compose(a, h), p))
    assert universal_spectrum_single(a, h, p).isclose(oracle, 1e-7)
    lap = universal_spectrum_single(a, h, LAPLACIAN)
    assert lap.isclose(eig_sym(laplacian_matrix(compose(a, h))), 1e-7)
    with pytest.raises(RegularityError):
        universal_spectrum_single(OrderedAssembly.of([path(3), complete(2)]), complete(2), p)


def test_spectrum_iterated(worked, k4_tree):
    assert universal_spectrum_iterated(worked, ADJACENCY) == adjacency_iterated(worked)
    for tree, p in [(worked, UniversalParams(1, 1, 1, 1)), (k4_tree, UniversalParams(2, 0, 1, 1))]:
        oracle = eig_sym(universal_matrix(eval_tree(tree), p))
        assert universal_spectrum_iterated(tree, p).isclose(oracle, 1e-7)
    assert universal_spectrum_iterated(worked, LAPLACIAN).isclose(laplacian_iterated(worked), 1e-7)


@pytest.mark.parametrize("seed", range(10))
def test_spectrum_iterated_random(seed):
    rng = random.Random(seed)
    t = random_regular_tree(16, seed)
    p = UniversalParams(rng.uniform(0.5, 2), rng.uniform(-1, 1), rng.uniform(0.5, 2), rng.uniform(-1, 1))
    oracle = eig_sym(universal_matrix(eval_tree(t), p))
    assert universal_spectrum_iterated(t, p).isclose(oracle, 1e-7)


def test_colored(worked):
    c = coloring_from_tree(worked)
    rep, w = universal_colored(c, ADJACENCY, _points(random.Random(4)))
    assert w == adjacency_iterated(worked)
    assert rep.ok()
    p = UniversalParams(1, 1, 1, 1)
    rep, w = universal_colored(c, p, _points(random.Random(5)))
    assert w.isclose(eig_sym(universal_matrix(c.graph, p)), 1e-7)
    assert rep.ok()


def test_q_eigenvalue():
    assert q_eigenvalue_check(complete(3), ADJACENCY) == (2, True)
    assert q_eigenvalue_check(disjoint_union([complete(2), complete(2)]), ADJACENCY) == (1, False)
    assert q_eigenvalue_check(complete(4), UniversalParams(1, 0, 1, 0)) == (7, True)
    with pytest.raises(RegularityError):
        q_eigenvalue_check(path(3), ADJACENCY)


@pytest.mark.parametrize("seed", range(20))
def test_q_simple_under_hypothesis(seed):
    rng = random.Random(seed)
    g = rng.choice([complete(rng.randint(2, 7)), cycle(rng.randint(3, 9))])
    gamma = rng.choice([0.0, rng.uniform(0.2, 2)])
    p = UniversalParams(rng.uniform(0.2, 2), rng.uniform(-1, 1), gamma, rng.uniform(-1, 1))
    q, simple = q_eigenvalue_check(g, p)
    assert simple


def test_q_repeated_on_disconnected():
    # gamma = 0 on a disconnected graph: one copy of q per component
    g = disjoint_union([cycle(4), cycle(4)])
    q, simple = q_eigenvalue_check(g, ADJACENCY)
    assert q == 2 and not simple
