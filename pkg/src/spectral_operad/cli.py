"""Command line entry point ``spectral-operad``."""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .colorings import coloring_from_tree, format_coloring, is_admissible, parse_coloring
from .dsl import format_tree, parse_tree
from .errors import SpectralOperadError
from .graphs import adjacency_matrix, format_graph, laplacian_matrix, parse_graph
from .operad import eval_tree
from .polynomials import BivarPoly, format_poly, gen_charpoly, gen_charpoly_iterated
from .random_trees import ENRICHMENTS, random_tree
from .spectra import DEFAULT_TOL, SpectrumWord, adjacency_iterated, eig_sym, laplacian_iterated
from .universal import (
    UniversalParams, universal_charpoly_exact, universal_charpoly_iterated, universal_matrix,
    universal_spectrum_iterated,
)
from .verify import SUITES, run_suite

TOL_ENV = "SPECTRAL_OPERAD_TOL"


def default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if not raw:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise SystemExit(f"error: {TOL_ENV}={raw!r} is not a number")
    if not tol > 0:
        raise SystemExit(f"error: {TOL_ENV} must be positive")
    return tol


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _tree(path: str):
    return parse_tree(_read(path))


def _params(args) -> UniversalParams:
    return UniversalParams(args.alpha, args.beta, args.gamma, args.delta)


def word_json(w: SpectrumWord, matrix_trace: float | None = None) -> dict:
    vals = [{"v": 0.0 if abs(v) <= w.tol else v, "m": m} for v, m in w.letters]
    out = {"values": vals, "trace_check": w.trace()}
    if matrix_trace is not None:
        out["matrix_trace"] = matrix_trace
    return out


# -- subcommands ---------------------------------------------------------------------

def cmd_compose(args) -> int:
    sys.stdout.write(format_graph(eval_tree(_tree(args.file))))
    return 0


def cmd_spectrum(args) -> int:
    tree = _tree(args.file)
    g = eval_tree(tree)
    tol = args.tol
    if args.matrix == "adjacency":
        m, factorized = adjacency_matrix(g), lambda: adjacency_iterated(tree, tol)
    elif args.matrix == "laplacian":
        m, factorized = laplacian_matrix(g), lambda: laplacian_iterated(tree, tol)
    else:
        params = _params(args)
        m, factorized = universal_matrix(g, params), lambda: universal_spectrum_iterated(tree, params, tol)
    words = []
    if args.method in ("direct", "both"):
        words.append(("direct", eig_sym(m, tol)))
    if args.method in ("factorized", "both"):
        words.append(("factorized", factorized()))
    trace = float(m.trace())
    for name, w in words:
        if args.format == "json":
            print(json.dumps({"method": name, **word_json(w, trace)}))
        else:
            print(w)
    if len(words) == 2 and not words[0][1].isclose(words[1][1], atol=tol):
        print(f"error: direct and factorized words differ beyond {tol:g}", file=sys.stderr)
        return 1
    return 0


def _parse_point(text: str) -> tuple[Fraction, Fraction]:
    try:
        x, t = (Fraction(p.strip()) for p in text.split(","))
    except ValueError:
        raise ValueError(f"--eval expects X,T, got {text!r}")
    return x, t


def cmd_charpoly(args) -> int:
    tree = _tree(args.file)
    g = eval_tree(tree)
    if args.kind == "generalized":
        p = gen_charpoly(g)
        print(format_poly(p))
        status = 0
        if args.check:
            same = gen_charpoly_iterated(tree) == p
            print("factorized: " + ("identical" if same else "DIFFERENT"))
            status = 0 if same else 1
        if args.eval:
            x, t = _parse_point(args.eval)
            print(p(x, t))
        return status
    params = _params(args)
    coeffs = universal_charpoly_exact(g, params)
    p = BivarPoly.from_univariate(coeffs)
    print(format_poly(p))
    if args.eval:
        x, _ = _parse_point(args.eval)
        print(p(x, 0))
    if args.samples:
        rng = random.Random(args.seed)
        bound = 1 + sum(abs(v) for v in params.as_tuple()) * g.n
        points = [rng.uniform(-bound, bound) for _ in range(args.samples)]
        rep = universal_charpoly_iterated(tree, params, points)
        for s in rep.samples:
            if s.skipped:
                print(f"x={s.x:.12g} skipped: {s.skipped}")
            else:
                print(f"x={s.x:.12g} lhs={s.lhs:.12g} rhs={s.rhs:.12g} rel_dev={s.rel_dev:.3e}")
        print(f"max_rel_dev={rep.max_rel_dev:.3e} interp_rel_error={rep.interp_rel_error:.3e}")
        return 0 if rep.ok() else 1
    return 0


def cmd_coloring(args) -> int:
    if args.action == "extract":
        if len(args.files) != 1:
            raise ValueError("coloring extract takes one tree file")
        sys.stdout.write(format_coloring(coloring_from_tree(_tree(args.files[0]))))
        return 0
    if len(args.files) != 2:
        raise ValueError("coloring check takes a graph file and a coloring file")
    g = parse_graph(_read(args.files[0]))
    c = parse_coloring(_read(args.files[1]), graph=g)
    res = is_admissible(c)
    print(res)
    return 0 if res else 1


def cmd_verify(args) -> int:
    results = run_suite(_tree(args.file), args.suite, _params(args), args.tol, args.samples, args.seed)
    for r in results:
        print(r)
    failed = sum(r.status == "fail" for r in results)
    passed = sum(r.status == "pass" for r in results)
    skipped = sum(r.status == "skip" for r in results)
    print(f"{passed} passed, {failed} failed, {skipped} skipped")
    return 1 if failed else 0


def cmd_random(args) -> int:
    print(format_tree(random_tree(args.leaves, args.seed, args.enrichment)))
    return 0


# -- parser ----------------------------------------------------------------------------

def _add_params(p: argparse.ArgumentParser, defaults=(1.0, 0.0, 0.0, 0.0)) -> None:
    for name, d in zip(("alpha", "beta", "gamma", "delta"), defaults):
        p.add_argument(f"--{name}", type=float, default=d)


def build_parser() -> argparse.ArgumentParser:
    tol = default_tol()
    ap = argparse.ArgumentParser(prog="spectral-operad",
                                 description="Spectra of graphs built by iterated composition.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="print the graph of a tree expression")
    p.add_argument("file")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("spectrum", help="spectrum of a composed graph")
    p.add_argument("file")
    p.add_argument("--matrix", choices=("adjacency", "laplacian", "universal"), default="adjacency")
    p.add_argument("--method", choices=("direct", "factorized", "both"), default="both")
    _add_params(p)
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--format", choices=("word", "json"), default="word")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("charpoly", help="exact characteristic polynomials")
    p.add_argument("file")
    p.add_argument("--kind", choices=("generalized", "universal"), default="generalized")
    p.add_argument("--eval", metavar="X,T")
    p.add_argument("--samples", type=int, default=0,
                   help="check the universal factorization at this many random points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--check", action="store_true",
                   help="also compare with the factorized polynomial")
    _add_params(p)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("coloring", help="extract or check edge colorings")
    p.add_argument("action", choices=("extract", "check"))
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_coloring)

    p = sub.add_parser("verify", help="compare every factorization with the direct computation")
    p.add_argument("file")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    _add_params(p, (1.0, 1.0, 1.0, 1.0))
    p.add_argument("--tol", type=float, default=tol)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("random", help="print a random tree expression")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--enrichment", choices=ENRICHMENTS, default="regular")
    p.set_defaults(func=cmd_random)
    return ap


def run_command(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpectralOperadError, ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
