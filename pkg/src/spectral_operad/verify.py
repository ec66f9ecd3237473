"""Factorized-versus-direct checks for one enriched tree.

A check whose hypotheses do not hold for the tree is reported as skipped,
not failed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .colorings import (
    coloring_from_tree, colored_adjacency_spectrum, colored_laplacian_spectrum, is_admissible,
)
from .combinatorics import Leaf, Node, Tree
from .errors import AdmissibilityError, ConnectivityError, RegularityError
from .graphs import adjacency_matrix, complement, laplacian_matrix
from .operad import OrderedAssembly, eval_tree
from .polynomials import (
    adjacency_charpoly, chen_rhs, gen_charpoly, gen_charpoly_colored, gen_charpoly_iterated,
    laplacian_charpoly, specializations,
)
from .spectra import (
    DEFAULT_TOL, adjacency_iterated, complement_adjacency_iterated, complement_laplacian_iterated,
    eig_sym, laplacian_iterated,
)
from .universal import (
    UniversalParams, universal_charpoly_iterated, universal_colored, universal_matrix,
    universal_spectrum_iterated,
)

SUITES = ("adjacency", "laplacian", "polynomial", "universal")
WORD_ATOL = 1e-7
HYPOTHESIS_ERRORS = (RegularityError, ConnectivityError, AdmissibilityError)


@dataclass
class CheckResult:
    suite: str
    name: str
    status: str          # "pass", "fail" or "skip"
    detail: str = ""

    def __str__(self) -> str:
        line = f"{self.status.upper():4} {self.suite}/{self.name}"
        return f"{line}: {self.detail}" if self.detail else line


def _run(suite: str, name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except HYPOTHESIS_ERRORS as exc:
        return CheckResult(suite, name, "skip", f"hypothesis not met ({exc})")
    except Exception as exc:  # noqa: BLE001 - any other error is a failed identity
        return CheckResult(suite, name, "fail", f"{type(exc).__name__}: {exc}")
    return CheckResult(suite, name, "pass" if ok else "fail", detail)


def _words(factorized, direct) -> tuple[bool, str]:
    ok = factorized.isclose(direct, WORD_ATOL)
    dev = factorized.max_deviation(direct)
    if ok:
        return True, f"max deviation {dev:.2e}"
    return False, f"factorized {factorized} vs direct {direct}"


def _admissible_coloring(tree: Tree):
    c = coloring_from_tree(tree)
    res = is_admissible(c)
    if not res:
        raise AdmissibilityError(str(res))
    return c


def adjacency_checks(tree: Tree, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    g = eval_tree(tree)
    direct = lambda: eig_sym(adjacency_matrix(g), tol)
    return [
        _run("adjacency", "iterated", lambda: _words(adjacency_iterated(tree, tol), direct())),
        _run("adjacency", "colored",
             lambda: _words(colored_adjacency_spectrum(_admissible_coloring(tree), tol), direct())),
        _run("adjacency", "complement", lambda: _words(
            complement_adjacency_iterated(tree, tol), eig_sym(adjacency_matrix(complement(g)), tol))),
    ]


def laplacian_checks(tree: Tree, tol: float = DEFAULT_TOL) -> list[CheckResult]:
    g = eval_tree(tree)
    direct = lambda: eig_sym(laplacian_matrix(g), tol)
    return [
        _run("laplacian", "iterated", lambda: _words(laplacian_iterated(tree, tol), direct())),
        _run("laplacian", "colored",
             lambda: _words(colored_laplacian_spectrum(_admissible_coloring(tree), tol), direct())),
        _run("laplacian", "complement", lambda: _words(
            complement_laplacian_iterated(tree, tol), eig_sym(laplacian_matrix(complement(g)), tol))),
    ]


def _exact(lhs, rhs) -> tuple[bool, str]:
    return (lhs == rhs), ("coefficient-identical" if lhs == rhs else "polynomials differ")


def polynomial_checks(tree: Tree) -> list[CheckResult]:
    g = eval_tree(tree)
    phi = gen_charpoly(g)

    def chen():
        if not isinstance(tree, Node):
            raise RegularityError("a leaf has no composition step")
        a = OrderedAssembly.of([eval_tree(c) for c in tree.children])
        return _exact(chen_rhs(a, tree.graph), phi)

    def special():
        adj, lap = specializations(phi, g.n)
        ok = adj == adjacency_charpoly(g) and lap == laplacian_charpoly(g)
        return ok, "phi(x,0) and (-1)^n phi(-x,1) match" if ok else "specialization mismatch"

    return [
        _run("polynomial", "single-level", chen),
        _run("polynomial", "iterated", lambda: _exact(gen_charpoly_iterated(tree), phi)),
        _run("polynomial", "colored",
             lambda: _exact(gen_charpoly_colored(_admissible_coloring(tree)), phi)),
        _run("polynomial", "specializations", special),
    ]


def universal_checks(tree: Tree, params: UniversalParams, samples: int = 20, seed: int = 0,
                     tol: float = DEFAULT_TOL) -> list[CheckResult]:
    g = eval_tree(tree)
    direct = lambda: eig_sym(universal_matrix(g, params), tol)
    rng = random.Random(seed)
    bound = 1 + sum(abs(v) for v in params.as_tuple()) * max(g.n, 1)
    points = [rng.uniform(-bound, bound) for _ in range(samples)]

    def charpoly():
        rep = universal_charpoly_iterated(tree, params, points)
        ok = rep.ok() and len(rep.clean) > 0
        return ok, (f"{len(rep.clean)} clean points, max rel dev {rep.max_rel_dev:.1e}, "
                    f"interpolation rel err {rep.interp_rel_error:.1e}")

    def colored():
        rep, word = universal_colored(_admissible_coloring(tree), params, points[:4], tol)
        ok, detail = _words(word, direct())
        return ok and rep.ok(), detail

    return [
        _run("universal", "iterated", lambda: _words(universal_spectrum_iterated(tree, params, tol), direct())),
        _run("universal", "colored", colored),
        _run("universal", "charpoly", charpoly),
    ]


def run_suite(tree: Tree, suite: str = "all", params: UniversalParams | None = None,
              tol: float = DEFAULT_TOL, samples: int = 20, seed: int = 0) -> list[CheckResult]:
    if isinstance(tree, Leaf):
        raise ValueError("a single leaf has nothing to verify")
    suites = SUITES if suite == "all" else (suite,)
    out: list[CheckResult] = []
    for s in suites:
        if s == "adjacency":
            out += adjacency_checks(tree, tol)
        elif s == "laplacian":
            out += laplacian_checks(tree, tol)
        elif s == "polynomial":
            out += polynomial_checks(tree)
        elif s == "universal":
            out += universal_checks(tree, params or UniversalParams(1, 1, 1, 1), samples, seed, tol)
        else:
            raise ValueError(f"unknown suite {s!r}")
    return out
