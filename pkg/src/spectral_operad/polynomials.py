"""Exact bivariate characteristic polynomials phi_g(x, t) = det(xI - A + tD).

Everything here is exact: coefficients are ints or Fractions, never floats.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

from .errors import InexactDivisionError, RegularityError
from .graphs import SimpleGraph, adjacency_matrix, external_valencies, laplacian_matrix, regularity
from .colorings import colored_factors
from .operad import Factor, OrderedAssembly, compose, tree_factors

Monomial = tuple[int, int]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")
    return c


class BivarPoly:
    """Polynomial in ``x`` and ``t`` with exact rational coefficients.

    Stored sparsely as ``{(deg_x, deg_t): coefficient}`` with no zero entries.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Monomial, Rational] | None = None):
        c = {}
        for (a, b), v in (coeffs or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in {(a, b)}")
            v = _norm(v)
            if v:
                c[(int(a), int(b))] = v
        self._c = c

    @classmethod
    def _raw(cls, c: dict) -> "BivarPoly":
        p = cls.__new__(cls)
        p._c = c
        return p

    @classmethod
    def const(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "BivarPoly":
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> "BivarPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_univariate(cls, coeffs: Sequence, var: str = "x") -> "BivarPoly":
        """Coefficients listed from the constant term up."""
        key = (lambda k: (k, 0)) if var == "x" else (lambda k: (0, k))
        return cls({key(k): c for k, c in enumerate(coeffs)})

    @property
    def coeffs(self) -> dict[Monomial, Rational]:
        return dict(self._c)

    def terms(self) -> list[tuple[Monomial, Rational]]:
        """Terms in lex order, x before t, highest first."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def degree_x(self) -> int:
        return max((a for a, _ in self._c), default=-1)

    def degree_t(self) -> int:
        return max((b for _, b in self._c), default=-1)

    def leading(self) -> tuple[Monomial, Rational]:
        m = max(self._c)
        return m, self._c[m]

    # -- ring operations

    @staticmethod
    def _lift(other) -> "BivarPoly":
        return other if isinstance(other, BivarPoly) else BivarPoly.const(other)

    def __add__(self, other) -> "BivarPoly":
        other = self._lift(other)
        c = dict(self._c)
        for m, v in other._c.items():
            s = c.get(m, 0) + v
            if s:
                c[m] = _norm(s) if isinstance(s, Fraction) else s
            else:
                c.pop(m, None)
        return BivarPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "BivarPoly":
        return BivarPoly._raw({m: -v for m, v in self._c.items()})

    def __sub__(self, other) -> "BivarPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "BivarPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "BivarPoly":
        other = self._lift(other)
        c: dict[Monomial, Rational] = {}
        for (a1, b1), v1 in self._c.items():
            for (a2, b2), v2 in other._c.items():
                m = (a1 + a2, b1 + b2)
                c[m] = c.get(m, 0) + v1 * v2
        return BivarPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BivarPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        out, base = BivarPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BivarPoly.const(other)
        if not isinstance(other, BivarPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def divmod(self, d: "BivarPoly") -> tuple["BivarPoly", "BivarPoly"]:
        """Division with remainder in lex order (x > t).

        With a single divisor the remainder is zero exactly when ``d`` divides.
        """
        d = self._lift(d)
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        (da, db), dc = d.leading()
        q: dict[Monomial, Rational] = {}
        r: dict[Monomial, Rational] = {}
        p = dict(self._c)
        while p:
            m = max(p)
            c = p[m]
            a, b = m
            if a >= da and b >= db:
                f = Fraction(c, dc) if isinstance(c, int) and isinstance(dc, int) else c / dc
                f = _norm(f)
                mq = (a - da, b - db)
                q[mq] = q.get(mq, 0) + f
                for (ea, eb), ev in d._c.items():
                    k = (ea + mq[0], eb + mq[1])
                    s = p.get(k, 0) - f * ev
                    if s:
                        p[k] = s
                    else:
                        p.pop(k, None)
            else:
                r[m] = c
                del p[m]
        return BivarPoly(q), BivarPoly(r)

    def exact_div(self, d: "BivarPoly") -> "BivarPoly":
        q, r = self.divmod(d)
        if not r.is_zero():
            raise InexactDivisionError(f"({format_poly(d)}) does not divide; remainder {format_poly(r)}")
        return q

    def __floordiv__(self, d) -> "BivarPoly":
        return self.exact_div(self._lift(d))

    # -- substitution and evaluation

    def substitute(self, x=None, t=None) -> "BivarPoly":
        """Replace ``x`` and/or ``t`` by polynomials or exact constants."""
        xs = BivarPoly.x() if x is None else self._lift(x)
        ts = BivarPoly.t() if t is None else self._lift(t)
        xp = _powers(xs, self.degree_x())
        tp = _powers(ts, self.degree_t())
        out = BivarPoly()
        for (a, b), v in self._c.items():
            out = out + (xp[a] * tp[b]) * v
        return out

    def shift_x(self, s) -> "BivarPoly":
        """p(x + s, t), where ``s`` may itself be a polynomial such as ``N*t``."""
        return self.substitute(x=BivarPoly.x() + s)

    def __call__(self, x, t):
        """Numeric evaluation; exact for rational arguments."""
        return sum(v * x ** a * t ** b for (a, b), v in self._c.items())

    def univariate(self, t_value=0) -> list:
        """Coefficients in ``x`` (constant first) after setting ``t``."""
        n = max(self.degree_x(), 0)
        out = [0] * (n + 1)
        for (a, b), v in self._c.items():
            out[a] += v * Fraction(t_value) ** b if b else v
        return [_norm(Fraction(c)) for c in out]

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"BivarPoly('{format_poly(self)}')"


def _powers(p: BivarPoly, k: int) -> list[BivarPoly]:
    out = [BivarPoly.const(1)]
    for _ in range(k):
        out.append(out[-1] * p)
    return out


def _product(polys: Iterable[BivarPoly]) -> BivarPoly:
    out = BivarPoly.const(1)
    for p in polys:
        out = out * p
    return out


# -- text format -------------------------------------------------------------------

def _coef_str(c) -> str:
    return f"{c.numerator}/{c.denominator}" if isinstance(c, Fraction) else str(c)


def format_poly(p: BivarPoly) -> str:
    """``c*x^a*t^b`` terms by descending x degree, then ascending t degree."""
    items = sorted(p.coeffs.items(), key=lambda kv: (-kv[0][0], kv[0][1]))
    if not items:
        return "0"
    out = []
    for k, ((a, b), c) in enumerate(items):
        neg = c < 0
        c = -c if neg else c
        factors = []
        if a:
            factors.append("x" if a == 1 else f"x^{a}")
        if b:
            factors.append("t" if b == 1 else f"t^{b}")
        if c != 1 or not factors:
            factors.insert(0, _coef_str(c))
        body = "*".join(factors)
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str) -> BivarPoly:
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[Monomial, Rational] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or (m.group(1) is None and pos > 0):
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {s!r}")
        sign = -1 if m.group(1) == "-" else 1
        c, a, b = Fraction(sign), 0, 0
        for f in m.group(2).strip().split("*"):
            f = f.strip()
            base, _, exp = f.partition("^")
            if exp and not exp.isdigit():
                raise ValueError(f"bad exponent in {f!r}")
            e = int(exp) if exp else 1
            if base == "x":
                a += e
            elif base == "t":
                b += e
            elif re.fullmatch(r"\d+(/\d+)?", base) and not exp:
                c *= Fraction(base)
            else:
                raise ValueError(f"bad factor {f!r}")
        coeffs[(a, b)] = coeffs.get((a, b), 0) + c
        pos = m.end()
    return BivarPoly(coeffs)


# -- determinants --------------------------------------------------------------------

def bareiss_det(matrix: Sequence[Sequence], exact_div: Callable | None = None, zero=0, one=1):
    """Fraction-free Gaussian elimination over an integral domain.

    Works for ints and for :class:`BivarPoly` entries; ``exact_div`` defaults to
    ``//`` which both types implement as exact division.
    """
    div = exact_div or (lambda a, b: a // b)
    m = [list(row) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, one
    for k in range(n - 1):
        if m[k][k] == zero:
            swap = next((i for i in range(k + 1, n) if m[i][k] != zero), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
        prev = pivot
    det = m[n - 1][n - 1] if n else one
    return det if sign > 0 else -det


def _kronecker_charpoly(m: Sequence[Sequence[int]], e: Sequence[int]) -> BivarPoly:
    """det(xI - M + t diag(e)) for an integer matrix M, exactly.

    Evaluates at t = 2^K, x = 2^(K(n+1)) with K large enough that the signed
    base-2^K digits of the integer determinant are the coefficients, then runs
    integer Bareiss on that image and reads the digits back.
    """
    n = len(m)
    if n == 0:
        return BivarPoly.const(1)
    # |coefficients| are bounded by the permanent of |entries| at x = t = 1
    bound = 1
    for i in range(n):
        bound *= 1 + abs(e[i]) + sum(abs(int(v)) for v in m[i])
    k = bound.bit_length() + 2
    tv = 1 << k
    xv = 1 << (k * (n + 1))
    mat = [[(xv if i == j else 0) - int(m[i][j]) + (tv * int(e[i]) if i == j else 0)
            for j in range(n)] for i in range(n)]
    value = bareiss_det(mat)
    coeffs = {}
    half, mask = 1 << (k - 1), (1 << k) - 1
    pos = 0
    while value:
        d = value & mask
        if d >= half:
            d -= 1 << k
        if d:
            coeffs[divmod(pos, n + 1)] = d
        value = (value - d) >> k
        pos += 1
    return BivarPoly(coeffs)


def _poly_matrix(m, e) -> list[list[BivarPoly]]:
    n = len(m)
    x, t = BivarPoly.x(), BivarPoly.t()
    return [[(x + t * int(e[i]) if i == j else BivarPoly()) - int(m[i][j]) for j in range(n)]
            for i in range(n)]


def charpoly_symbolic(m, e) -> BivarPoly:
    """Same as the Kronecker route but with Bareiss directly over Z[x, t] (slow; a cross-check)."""
    if len(m) == 0:
        return BivarPoly.const(1)
    return bareiss_det(_poly_matrix(m, e), zero=BivarPoly(), one=BivarPoly.const(1))


def faddeev_leverrier(m: Sequence[Sequence]) -> list:
    """Characteristic polynomial det(xI - M), constant term first, exact.

    Integer matrices stay in plain ints: every coefficient is an integer, so
    the division by k is exact.
    """
    n = len(m)
    vals = [[Fraction(v) for v in row] for row in m]
    integral = all(v.denominator == 1 for row in vals for v in row)
    a = [[int(v) for v in row] for row in vals] if integral else vals
    nz = [[(l, v) for l, v in enumerate(row) if v] for row in a]
    coeffs: list = [0] * (n + 1)
    coeffs[n] = 1
    mk: list = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c I
        prod = [[sum(v * mk[l][j] for l, v in nz[i]) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        mk = prod
        tr = sum(v * mk[l][i] for i in range(n) for l, v in nz[i])
        if integral:
            q, r = divmod(-tr, k)
            if r:
                raise InexactDivisionError(f"trace {tr} not divisible by {k}")
            coeffs[n - k] = q
        else:
            coeffs[n - k] = Fraction(-tr) / k
    return [_norm(c) for c in coeffs]


# -- graph polynomials ---------------------------------------------------------------

def gen_charpoly(g: SimpleGraph) -> BivarPoly:
    """phi_g(x, t) = det(xI - A(g) + t D(g))."""
    return _kronecker_charpoly(adjacency_matrix(g).tolist(), g.valencies())


def adjacency_charpoly(g: SimpleGraph) -> list:
    return faddeev_leverrier(adjacency_matrix(g).tolist())


def laplacian_charpoly(g: SimpleGraph) -> list:
    return faddeev_leverrier(laplacian_matrix(g).tolist())


def specializations(p: BivarPoly, n: int) -> tuple[list, list]:
    """(phi(x, 0), (-1)^n phi(-x, 1)) as coefficient lists, constant first."""
    adj = p.univariate(0)
    lap = p.substitute(x=-BivarPoly.x(), t=1) * (-1) ** n
    return adj, lap.univariate(0)


def _pair_charpoly(sizes: Sequence[int], regs: Sequence[int], h: SimpleGraph) -> BivarPoly:
    # A(a, h) is similar to diag(r) + A(h) diag(n) through diag(sqrt(n)), an integer matrix
    k = len(sizes)
    ext = external_valencies(sizes, h)
    ah = adjacency_matrix(h)
    m = [[(regs[i] if i == j else 0) + int(ah[i, j]) * sizes[j] for j in range(k)] for i in range(k)]
    return _kronecker_charpoly(m, [regs[i] + ext[i] for i in range(k)])


def _regular_blocks(blocks: Sequence[SimpleGraph]) -> list[int]:
    regs = [regularity(b) for b in blocks]
    for j, r in enumerate(regs):
        if r is None:
            raise RegularityError(f"block {j + 1} is not regular")
    return regs


def gen_charpoly_pair(a: OrderedAssembly, h: SimpleGraph) -> BivarPoly:
    """Characteristic polynomial of A(a, h) - t D(a, h), with D(a, h) = diag(r_i + N_i)."""
    return _pair_charpoly(a.sizes, _regular_blocks(a.components), h)


def linear_factor(r: int, shift: int) -> BivarPoly:
    """x - r + t (r + shift)."""
    return BivarPoly({(1, 0): 1, (0, 0): -r, (0, 1): r + shift})


def chen_rhs(a: OrderedAssembly, h: SimpleGraph, divisions: list | None = None) -> BivarPoly:
    """phi_(a,h) times each phi_{g_j}(x + t N_j, t) divided by x - r_j + t(r_j + N_j).

    Every division must be exact; pass a list as ``divisions`` to collect
    ``(divisor, remainder)`` pairs.
    """
    regs = _regular_blocks(a.components)
    ext = external_valencies(a.sizes, h)
    out = _pair_charpoly(a.sizes, regs, h)
    t = BivarPoly.t()
    for g, r, N in zip(a.components, regs, ext):
        out = out * _checked_div(gen_charpoly(g).shift_x(t * N), linear_factor(r, N), divisions)
    return out


def _checked_div(p: BivarPoly, d: BivarPoly, log: list | None) -> BivarPoly:
    q, r = p.divmod(d)
    if log is not None:
        log.append((d, r))
    if not r.is_zero():
        raise InexactDivisionError(f"({format_poly(d)}) does not divide; remainder {format_poly(r)}")
    return q


def charpoly_from_factors(factors: Sequence[Factor], divisions: list | None = None) -> BivarPoly:
    t = BivarPoly.t()
    out = BivarPoly.const(1)
    for f in factors:
        regs = list(f.block_regularities)
        if any(r is None for r in regs):
            raise RegularityError(f"a block of the step at level {f.level} is not regular")
        pair = _pair_charpoly(f.sizes, regs, f.h)
        if not f.is_root:
            if f.regularity is None:
                raise RegularityError(f"the graph of the step at level {f.level} is not regular")
            N = f.external_valency
            pair = _checked_div(pair.shift_x(t * N), linear_factor(f.regularity, N), divisions)
        out = out * pair
    return out


def gen_charpoly_iterated(tree, divisions: list | None = None) -> BivarPoly:
    factors = tree_factors(tree)
    if not factors:
        return BivarPoly.x()
    return charpoly_from_factors(factors, divisions)


def gen_charpoly_colored(c, divisions: list | None = None) -> BivarPoly:
    return charpoly_from_factors(colored_factors(c), divisions)


def poly_divides(p: BivarPoly, q: BivarPoly) -> bool:
    """True when ``p`` divides ``q`` over the rationals."""
    if p.is_zero():
        raise ValueError("the zero polynomial divides nothing")
    return q.divmod(p)[1].is_zero()


def assembly_charpoly(a: OrderedAssembly) -> BivarPoly:
    return _product(gen_charpoly(g) for g in a.components)


def composed_charpoly(a: OrderedAssembly, h: SimpleGraph) -> BivarPoly:
    return gen_charpoly(compose(a, h))
