"""Theta series of even lattices, scalar and with pluriharmonic coefficients.

Convention: with ``S`` the even Gram matrix of the lattice, the coefficient at
``T`` counts ``X`` in ``Z^(m x n)`` with ``X^t S X = 2T``, so every index is
half-integral and every count is an integer.

Vector-valued inputs come from polynomials ``P(X)`` with values in an
integral representation ``rho_0`` satisfying ``P(X A) = rho_0(A^t) P(X)``.
With that convention the theta coefficients obey
``a(U T U^t) = chi(det U) rho(U) a(T)`` for ``rho = rho_0 (x) det^(m/2)`` and
``chi(-1) = (-1)^(m/2)``.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Optional

from sympy import ZZ, ring

from . import intlinalg as il
from .errors import (
    DegenerateR,
    NotEquivariant,
    NotPluriharmonic,
    OddRank,
    UnknownLattice,
)
from .expansion import FourierExpansion, LevelSpec
from .symmat import HalfIntegralMatrix, automorphisms, enumerate_classes, is_definite, short_vectors
from .weylrep import build_rep, rep_matrix


@dataclass(frozen=True)
class EvenLattice:
    gram: tuple
    name: Optional[str] = None

    def __post_init__(self):
        gram = il.as_matrix(self.gram)
        object.__setattr__(self, "gram", gram)
        HalfIntegralMatrix(gram)  # symmetric with even diagonal
        if not is_definite(gram):
            raise ValueError("lattice Gram matrix must be positive definite")

    @property
    def m(self):
        return len(self.gram)

    @property
    def det(self):
        return il.det(self.gram)

    def level(self):
        """Least ``N`` with ``N S^-1`` integral with even diagonal."""
        adj_den = il.inverse(self.gram)
        N = 1
        while True:
            M = [[x * N for x in row] for row in adj_den]
            if all(x.denominator == 1 for row in M for x in row) and all(
                    M[i][i].numerator % 2 == 0 for i in range(self.m)):
                return N
            N += 1


_CATALOG = {
    "A1": (((2,),), 2),
    "A2": (((2, 1), (1, 2)), 3),
    "D4": (((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)), 4),
    "E8": ((
        (2, -1, 0, 0, 0, 0, 0, 0),
        (-1, 2, -1, 0, 0, 0, 0, 0),
        (0, -1, 2, -1, 0, 0, 0, -1),
        (0, 0, -1, 2, -1, 0, 0, 0),
        (0, 0, 0, -1, 2, -1, 0, 0),
        (0, 0, 0, 0, -1, 2, -1, 0),
        (0, 0, 0, 0, 0, -1, 2, 0),
        (0, 0, -1, 0, 0, 0, 0, 2),
    ), 1),
}


def catalog(name):
    try:
        gram, det = _CATALOG[name]
    except KeyError:
        raise UnknownLattice(f"unknown lattice {name!r}; known: {', '.join(sorted(_CATALOG))}") from None
    L = EvenLattice(gram, name)
    assert L.det == det, f"{name}: determinant {L.det} != {det}"
    return L


def catalog_names():
    return sorted(_CATALOG)


def theta_level(L):
    half = L.m // 2
    return LevelSpec(N=L.level(), Nprime=1, p_power=1, char_parity=(-1) ** half)


# ---------------------------------------------------------------------------
# representation counting


class _VectorPool:
    def __init__(self, gram, max_norm):
        self.gram = gram
        self.by_norm = {}
        for v, nv in short_vectors(gram, max_norm):
            self.by_norm.setdefault(nv, []).append((v, il.matvec(gram, v)))

    def solutions(self, G):
        """Yield column tuples ``(x_1, ..., x_n)`` with ``x_i^t S x_j = G[i][j]``."""
        n = len(G)
        chosen = []

        def rec(i):
            for v, Sv in self.by_norm.get(G[i][i], ()):
                ok = True
                for j in range(i):
                    if sum(a * b for a, b in zip(chosen[j][1], v)) != G[j][i]:
                        ok = False
                        break
                if not ok:
                    continue
                chosen.append((v, Sv))
                if i == n - 1:
                    yield tuple(c[0] for c in chosen)
                else:
                    yield from rec(i + 1)
                chosen.pop()

        if n == 0:
            yield ()
        else:
            yield from rec(0)

    def count(self, G):
        return sum(1 for _ in self.solutions(G))


def representation_count(gram, T):
    """``#{X : X^t gram X = 2T}`` for a definite even ``gram``."""
    T = T if isinstance(T, HalfIntegralMatrix) else HalfIntegralMatrix(T)
    if T.n == 0:
        return 1
    pool = _VectorPool(il.as_matrix(gram), max(T.G[i][i] for i in range(T.n)))
    return pool.count(T.G)


def scalar_theta(L, n, bound):
    """Degree-``n`` theta series of ``L`` truncated at ``trace(T) <= bound``."""
    if L.m % 2:
        raise OddRank("theta series of odd rank lattices have half-integral weight")
    rep = build_rep(n, (L.m // 2,) * n)
    pool = _VectorPool(L.gram, 2 * bound)
    coeffs = {T: (pool.count(T.G),) for T in enumerate_classes(n, bound)}
    return FourierExpansion(n, rep, theta_level(L), 0, bound, coeffs)


# ---------------------------------------------------------------------------
# polynomial coefficients


def _x_ring(m, n):
    names = [f"x{i}_{a}" for i in range(m) for a in range(n)]
    R, *gens = ring(",".join(names), ZZ)
    return R, [gens[i * n:(i + 1) * n] for i in range(m)]


@dataclass(frozen=True, eq=False)
class PolyCoeff:
    m: int
    n: int
    components: tuple  # sympy PolyElements in the variables x{i}_{a}
    rep0: object
    ring: object = field(repr=False)
    xs: tuple = field(repr=False)

    @property
    def ell(self):
        return len(self.components)

    def __call__(self, X):
        vals = [X[i][a] for i in range(self.m) for a in range(self.n)]
        return tuple(int(c.LC) if c.is_ground else int(c(*vals)) for c in self.components)


def constant_coeff(L, n):
    R, xs = _x_ring(L.m, n)
    return PolyCoeff(L.m, n, (R(1),), build_rep(n, (0,) * n), R, tuple(map(tuple, xs)))


def _adjugate(gram):
    inv = il.inverse(gram)
    d = il.det(gram)
    return tuple(tuple(int(x * d) for x in row) for row in inv)


def _monomials(m, degree):
    if m == 0:
        return [()] if degree == 0 else []
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials(m - 1, degree - first):
            out.append((first,) + rest)
    return out


def harmonic_forms(L, degree):
    """Integral basis of homogeneous ``h`` of the given degree with ``sum adj(S)_ij d_i d_j h = 0``.

    Each form is a dict ``exponent tuple -> integer coefficient``.
    """
    m = L.m
    adj = _adjugate(L.gram)
    monos = _monomials(m, degree)
    targets = _monomials(m, degree - 2) if degree >= 2 else []
    tindex = {t: k for k, t in enumerate(targets)}
    A = [[0] * len(monos) for _ in targets]
    for col, e in enumerate(monos):
        for i in range(m):
            for j in range(m):
                if not adj[i][j]:
                    continue
                f = list(e)
                c = f[i]
                f[i] -= 1
                if c == 0:
                    continue
                c *= f[j]
                f[j] -= 1
                if c == 0:
                    continue
                A[tindex[tuple(f)]][col] += adj[i][j] * c
    if not targets:
        kernel = [[int(i == j) for i in range(len(monos))] for j in range(len(monos))]
    else:
        kernel = [il.clear_denominators(v) for v in il.rational_kernel(A, len(monos))]
    if not kernel:
        return []
    basis = il.saturate(il.transpose(kernel))
    return [{monos[i]: basis[i][k] for i in range(len(monos)) if basis[i][k]}
            for k in range(len(basis[0]))]


def invariant_harmonic_forms(L, degree):
    """Harmonic forms averaged over the automorphism group of ``L``; nonzero ones only."""
    auts = automorphisms(HalfIntegralMatrix(L.gram))
    m = L.m
    R, *ys = ring(",".join(f"y{i}" for i in range(m)), ZZ)
    out = []
    for h in harmonic_forms(L, degree):
        hp = R({e: c for e, c in h.items()})
        total = R(0)
        for U in auts:
            # lattice automorphisms act on coordinates by x -> U^t x
            g = il.transpose(U)
            subs = [(ys[i], sum((g[i][j] * ys[j] for j in range(m)), R(0))) for i in range(m)]
            total += hp.compose(subs)
        if total == 0:
            continue
        content = 0
        for c in total.values():
            content = gcd(content, int(c))
        form = {e: int(c) // content for e, c in total.items()}
        if form not in out and {e: -c for e, c in form.items()} not in out:
            out.append(form)
    return out


def _column_monomials(m, n, alpha):
    """Exponent tuples (row-major over ``x{i}_{a}``) whose column ``a`` has degree ``alpha[a]``."""
    per_column = [_monomials(m, alpha[a]) for a in range(n)]
    out = []
    for choice in product(*per_column):
        e = [0] * (m * n)
        for a, col in enumerate(choice):
            for i, k in enumerate(col):
                e[i * n + a] = k
        out.append(tuple(e))
    return out


def _tableau_content(tab, n):
    alpha = [0] * n
    for row in tab:
        for c in row:
            alpha[c - 1] += 1
    return tuple(alpha)


def _elementary(n, a, b):
    return tuple(tuple(int(i == j) + int((i, j) == (a, b)) for j in range(n)) for i in range(n))


def solve_harmonic_coeffs(L, n, weight0):
    """Integral basis of all pluriharmonic ``P`` with ``P(X A) = rho_0(A^t) P(X)``.

    ``rho_0`` has highest weight ``weight0``; its components are polynomials of
    degree ``|weight0|`` in the ``m x n`` entries of ``X``. Torus equivariance
    fixes the column degrees of each component (the content of its tableau), so
    the unknowns are the coefficients of those monomials only. The remaining
    conditions (equivariance under the elementary matrices ``1 + E_ab`` and
    pluriharmonicity) are linear and solved exactly.
    """
    m = L.m
    rep0 = build_rep(n, tuple(weight0))
    R, xs = _x_ring(m, n)
    flat = [x for row in xs for x in row]
    unknowns = []
    for b, tab in enumerate(rep0.tableaux):
        for e in _column_monomials(m, n, _tableau_content(tab, n)):
            unknowns.append((b, e))
    rows = {}

    def put(key, col, value):
        rows.setdefault(key, {})
        rows[key][col] = rows[key].get(col, 0) + value

    for a in range(n):
        for bb in range(n):
            if a == bb:
                continue
            A = _elementary(n, a, bb)
            M = rep_matrix(rep0, il.transpose(A))
            subs = [(xs[i][c], sum((xs[i][d] * A[d][c] for d in range(n)), R(0)))
                    for i in range(m) for c in range(n)]
            for col, (b, e) in enumerate(unknowns):
                moved = R({e: 1}).compose(subs)
                for mono, c in moved.items():
                    put(("eq", a, bb, b, mono), col, int(c))
                for b2 in range(rep0.ell):
                    if M[b2][b]:
                        put(("eq", a, bb, b2, e), col, -M[b2][b])
    adj = _adjugate(L.gram)
    for col, (b, e) in enumerate(unknowns):
        mono = R({e: 1})
        first = {(i, c): mono.diff(xs[i][c]) for i in range(m) for c in range(n)}
        for c1 in range(n):
            for c2 in range(c1, n):
                acc = R(0)
                for i in range(m):
                    for j in range(m):
                        if adj[i][j]:
                            acc += adj[i][j] * first[(i, c1)].diff(xs[j][c2])
                for mono2, c in acc.items():
                    put(("ph", c1, c2, b, mono2), col, int(c))
    kernel = il.sparse_kernel(rows.values(), len(unknowns))
    out = []
    for v in kernel:
        w = il.clear_denominators(v)
        comps = [{} for _ in range(rep0.ell)]
        for k, (b, e) in enumerate(unknowns):
            if w[k]:
                comps[b][e] = w[k]
        out.append(PolyCoeff(m, n, tuple(R(c) for c in comps), rep0, R, tuple(map(tuple, xs))))
    return out


def sym_power_coeff(L, n, h):
    """``P(X) = coordinates of (y -> h(X y^t))`` for ``rho_0`` the ``j``-th symmetric power.

    ``h`` is a homogeneous form of degree ``j`` on ``Z^m`` (exponent dict). The
    basis of ``rho_0 = (j, 0, ..., 0)`` consists of the monomials in the first
    row of the generic matrix, ordered as the one-row tableaux.
    """
    degree = sum(next(iter(h)))
    m = L.m
    names = [f"x{i}_{a}" for i in range(m) for a in range(n)] + [f"w{a}" for a in range(n)]
    Rxw, *gens = ring(",".join(names), ZZ)
    xs = [gens[i * n:(i + 1) * n] for i in range(m)]
    ws = gens[m * n:]
    lin = [sum((xs[i][a] * ws[a] for a in range(n)), Rxw(0)) for i in range(m)]
    total = Rxw(0)
    for e, c in h.items():
        term = Rxw(c)
        for i, k in enumerate(e):
            term *= lin[i] ** k
        total += term
    rep0 = build_rep(n, (degree,) + (0,) * (n - 1))
    Rx, xvars = _x_ring(m, n)
    comps = {}
    for tab in rep0.tableaux:
        alpha = [0] * n
        for c in tab[0]:
            alpha[c - 1] += 1
        comps[tuple(alpha)] = {}
    for mono, c in total.items():
        comps[tuple(mono[m * n:])][tuple(mono[: m * n])] = int(c)
    components = []
    for tab in rep0.tableaux:
        alpha = [0] * n
        for c in tab[0]:
            alpha[c - 1] += 1
        components.append(Rx(comps[tuple(alpha)]))
    return PolyCoeff(m, n, tuple(components), rep0, Rx, tuple(map(tuple, xvars)))


def pluriharmonic_check(P, L):
    """``sum_ij adj(S)_ij d^2 P / dx_{i,a} dx_{j,b} = 0`` for all columns ``a, b``."""
    adj = _adjugate(L.gram)
    m, n = P.m, P.n
    for comp in P.components:
        if comp.is_ground:
            continue
        first = {(i, a): comp.diff(P.xs[i][a]) for i in range(m) for a in range(n)}
        for a in range(n):
            for b in range(a, n):
                acc = P.ring(0)
                for i in range(m):
                    for j in range(m):
                        if adj[i][j]:
                            acc += adj[i][j] * first[(i, a)].diff(P.xs[j][b])
                if acc != 0:
                    return False
    return True


def equivariance_check(P, trials=20, seed=0, transpose=True):
    """``P(X A) == rho_0(A^t) P(X)`` as polynomials for random integer ``A``.

    With ``transpose=False`` the untransposed rule ``rho_0(A)`` is tested instead.
    """
    rng = random.Random(seed)
    m, n = P.m, P.n
    R = P.ring
    for _ in range(trials):
        A = tuple(tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(n))
        M = rep_matrix(P.rep0, il.transpose(A) if transpose else A)
        subs = [(P.xs[i][a], sum((P.xs[i][b] * A[b][a] for b in range(n)), R(0)))
                for i in range(m) for a in range(n)]
        moved = [c.compose(subs) if not c.is_ground else c for c in P.components]
        for b in range(P.ell):
            rhs = R(0)
            for c in range(P.ell):
                if M[b][c]:
                    rhs += M[b][c] * P.components[c]
            if moved[b] != rhs:
                return False
    return True


def poly_theta(L, n, P, bound, check=True):
    """Theta series with pluriharmonic coefficient ``P``: ``a(T) = sum_{X^t S X = 2T} P(X)``."""
    if L.m % 2:
        raise OddRank("theta series of odd rank lattices have half-integral weight")
    if (P.m, P.n) != (L.m, n):
        raise ValueError("coefficient shape does not match lattice rank and degree")
    if check:
        if not pluriharmonic_check(P, L):
            raise NotPluriharmonic("coefficient polynomial is not pluriharmonic")
        if not equivariance_check(P):
            raise NotEquivariant("coefficient polynomial is not rho_0-equivariant")
    half = L.m // 2
    weight = tuple(k + half for k in P.rep0.weight)
    rep = build_rep(n, weight)
    pool = _VectorPool(L.gram, 2 * bound)
    coeffs = {}
    for T in enumerate_classes(n, bound):
        acc = [0] * P.ell
        for cols in pool.solutions(T.G):
            X = il.transpose(cols) if cols else ()
            for k, v in enumerate(P(X)):
                acc[k] += v
        coeffs[T] = tuple(acc)
    return FourierExpansion(n, rep, theta_level(L), 0, bound, coeffs)


def harmonic_theta(L, n, degree, bound):
    """Vector-valued theta series for ``rho_0 = Sym^degree``.

    Solves for all pluriharmonic equivariant coefficients and returns
    ``(F, P)`` for the first solution whose theta series is not identically
    zero within the bound. Raises ``ValueError`` if every solution gives zero,
    which happens when the lattice has no automorphism-invariant harmonic
    form of that degree.
    """
    for P in solve_harmonic_coeffs(L, n, (degree,) + (0,) * (n - 1)):
        F = poly_theta(L, n, P, bound)
        if any(any(v) for v in F.coeffs.values()):
            return F, P
    raise ValueError(f"every Sym^{degree} harmonic theta series of {L.name or 'the lattice'} "
                     f"vanishes up to trace {bound}")


# ---------------------------------------------------------------------------
# degree-one q-series


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple
    modulus: int = 0

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        if self.modulus:
            c = tuple(x % self.modulus for x in c)
        object.__setattr__(self, "coeffs", c)

    @property
    def bound(self):
        return len(self.coeffs) - 1

    def __getitem__(self, j):
        return self.coeffs[j]

    def scale(self, c):
        return QSeries(tuple(c * x for x in self.coeffs), self.modulus)

    def truncate(self, bound):
        return QSeries(self.coeffs[: bound + 1], self.modulus)

    def text(self):
        return "\n".join(f"{j}:{c}" for j, c in enumerate(self.coeffs))


def q_mul(a, b):
    bound = min(a.bound, b.bound)
    out = [0] * (bound + 1)
    for i in range(bound + 1):
        if a.coeffs[i]:
            for j in range(bound + 1 - i):
                out[i + j] += a.coeffs[i] * b.coeffs[j]
    modulus = a.modulus or b.modulus
    return QSeries(tuple(out), modulus)


def q_congruent(a, b, p, m, bound=None):
    q = p ** m
    if bound is None:
        bound = min(a.bound, b.bound)
    if bound > min(a.bound, b.bound):
        raise ValueError("comparison bound exceeds the series' precision")
    return all((a.coeffs[j] - b.coeffs[j]) % q == 0 for j in range(bound + 1))


def theta_qseries(R, bound):
    """``c(j) = #{x : x^t (2R) x = 2j}`` for ``j <= bound``."""
    R = R if isinstance(R, HalfIntegralMatrix) else HalfIntegralMatrix(R)
    out = [0] * (bound + 1)
    if R.n == 0:
        out[0] = 1
        return QSeries(tuple(out))
    if not is_definite(R):
        raise DegenerateR("theta series of a degenerate form does not converge")
    for _, nv in short_vectors(R.G, 2 * bound):
        out[nv // 2] += 1
    return QSeries(tuple(out))
