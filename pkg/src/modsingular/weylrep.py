"""Integral highest-weight representations of GL(n).

The representation of highest weight ``lambda`` is realised on the span of
bideterminants: for each semistandard tableau of shape ``lambda`` with entries
in ``1..n`` the basis polynomial is the product, over the columns of the
tableau, of the minor of a generic ``n x n`` matrix ``Y`` on the first ``h``
rows and the columns listed in that tableau column (``h`` its height). The
group acts by right translation ``(rho(U) f)(Y) = f(Y U)``, which is a
homomorphism and, on this basis, has integer matrix entries.

Coordinates of a polynomial in the span are read off by evaluating at a fixed
set of integer points and solving one integer linear system.
"""

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import intlinalg as il
from .errors import DependentColumns, InvalidWeight, NonIntegralCoordinate


def parse_weight(text):
    parts = [p for p in str(text).replace(" ", "").split(",") if p]
    try:
        lam = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise InvalidWeight(f"bad weight {text!r}") from exc
    check_weight(lam)
    return lam


def check_weight(lam):
    if not lam:
        raise InvalidWeight("empty weight")
    if any(x < 0 for x in lam):
        raise InvalidWeight(f"weight {lam} is not polynomial")
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise InvalidWeight(f"weight {lam} is not non-increasing")


def weyl_dimension(lam):
    n = len(lam)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def conjugate_partition(lam):
    return tuple(sum(1 for x in lam if x > c) for c in range(lam[0] if lam else 0))


def semistandard_tableaux(lam, n):
    """All SSYT of shape ``lam`` with entries in ``1..n`` as tuples of rows."""
    shape = [x for x in lam if x > 0]
    cells = [(i, j) for i, length in enumerate(shape) for j in range(length)]
    filling = {}
    out = []

    def rec(k):
        if k == len(cells):
            out.append(tuple(tuple(filling[(i, j)] for j in range(length))
                             for i, length in enumerate(shape)))
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, filling[(i, j - 1)])
        if i > 0:
            lo = max(lo, filling[(i - 1, j)] + 1)
        for v in range(lo, n + 1):
            filling[(i, j)] = v
            rec(k + 1)
        filling.pop((i, j), None)

    rec(0)
    return out


def _tableau_columns(tab):
    cols = []
    for j in range(len(tab[0]) if tab else 0):
        cols.append(tuple(row[j] - 1 for row in tab if len(row) > j))
    return tuple(cols)


def _minor(Y, cols):
    h = len(cols)
    return il.det(tuple(tuple(Y[i][c] for c in cols) for i in range(h)))


@dataclass(frozen=True, eq=False)
class IntegralRep:
    n: int
    weight: tuple
    ell: int
    tableaux: tuple
    columns: tuple = field(repr=False)
    points: tuple = field(repr=False)
    eval_inverse: tuple = field(repr=False)  # den * E^{-1}
    eval_den: int = field(repr=False)

    def evaluate_basis(self, Y):
        """Values of all basis polynomials at the integer matrix ``Y``."""
        cache = {}
        vals = []
        for cols in self.columns:
            v = 1
            for c in cols:
                if c not in cache:
                    cache[c] = _minor(Y, c)
                v *= cache[c]
            vals.append(v)
        return vals

    def coordinates_of(self, poly):
        """Coordinates of ``Y -> poly(Y)`` (a callable on integer matrices) in the basis."""
        values = [poly(Y) for Y in self.points]
        return self._solve(values)

    def _solve(self, values):
        out = []
        for row in self.eval_inverse:
            s = sum(a * b for a, b in zip(row, values))
            q, rem = divmod(s, self.eval_den)
            if rem:
                raise NonIntegralCoordinate("non-integral coordinate in representation basis")
            out.append(q)
        return tuple(out)


def _random_point(rng, n):
    return tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(n))


@lru_cache(maxsize=None)
def build_rep(n, weight, seed=0):
    """Integral realisation of the irreducible representation of highest weight ``weight``."""
    weight = tuple(int(x) for x in weight)
    check_weight(weight)
    if len(weight) != n:
        raise InvalidWeight(f"weight {weight} has length {len(weight)} but n = {n}")
    tabs = semistandard_tableaux(weight, n)
    ell = len(tabs)
    if ell != weyl_dimension(weight):
        raise AssertionError("tableau count disagrees with the Weyl dimension formula")
    columns = tuple(_tableau_columns(t) for t in tabs)
    rng = random.Random(seed)
    proto = IntegralRep(n, weight, ell, tuple(tabs), columns, (), (), 1)
    points, rows = [], []
    for _ in range(100 * ell):
        if len(points) == ell:
            break
        # keep a point only if it raises the rank of the evaluation system
        Y = _random_point(rng, n)
        row = proto.evaluate_basis(Y)
        if il.rank(tuple(rows + [row])) > len(rows):
            points.append(Y)
            rows.append(row)
    if len(points) == ell:
        inv = il.inverse(rows)
        den = 1
        for r in inv:
            for x in r:
                den = den * x.denominator // _gcd(den, x.denominator)
        inv_int = tuple(tuple(int(x * den) for x in r) for r in inv)
        return IntegralRep(n, weight, ell, tuple(tabs), columns, tuple(points), inv_int, den)
    raise AssertionError("could not find an invertible evaluation system")


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rep_matrix(rep, U):
    """Matrix of ``rho(U)`` in the bideterminant basis (``rho(UV) = rho(U) rho(V)``)."""
    return _rep_matrix(rep, il.as_matrix(U))


@lru_cache(maxsize=100000)
def _rep_matrix(rep, U):
    if len(U) != rep.n:
        raise ValueError(f"expected a {rep.n}x{rep.n} matrix")
    images = [rep.evaluate_basis(il.matmul(Y, U)) for Y in rep.points]
    cols = []
    for b in range(rep.ell):
        cols.append(rep._solve([vals[b] for vals in images]))
    return il.transpose(cols)


def scalar_weight(rep):
    return rep.weight[-1]


@dataclass(frozen=True)
class GradedPiece:
    weight: int
    basis: tuple  # ell x d integer matrix, columns span the piece

    @property
    def dim(self):
        return len(self.basis[0]) if self.basis and self.basis[0] else 0


def torus_matrix(n, x):
    return tuple(tuple((x if i == 0 else 1) if i == j else 0 for j in range(n)) for i in range(n))


def weight_grading(rep):
    """Saturated eigenlattices of ``rho(diag(x, 1, ..., 1))``, one per weight."""
    M = rep_matrix(rep, torus_matrix(rep.n, 2))
    pieces = []
    for i in range(rep.weight[-1], rep.weight[0] + 1):
        shifted = tuple(tuple(M[a][b] - (2 ** i if a == b else 0) for b in range(rep.ell))
                        for a in range(rep.ell))
        kernel = il.rational_kernel(shifted, rep.ell)
        if not kernel:
            continue
        cols = [il.clear_denominators(v) for v in kernel]
        basis = il.saturate(il.transpose(cols))
        pieces.append(GradedPiece(i, basis))
    return pieces


def graded_piece(rep, weight):
    for piece in weight_grading(rep):
        if piece.weight == weight:
            return piece
    return GradedPiece(weight, tuple(() for _ in range(rep.ell)))


@dataclass(frozen=True)
class ElementaryDivisorBasis:
    full_basis: tuple  # ell x ell unimodular, columns a_1..a_ell
    divisors: tuple  # alpha_1 | ... | alpha_d
    transform: tuple  # P with P * full_basis = I

    @property
    def count(self):
        return len(self.divisors)

    def vector(self, j):
        return tuple(row[j] for row in self.full_basis)


def elementary_divisor_basis(sublattice_basis):
    """Adapted basis ``a_j`` of ``Z^ell`` with ``alpha_j a_j`` spanning the sublattice."""
    B = il.as_matrix(sublattice_basis)
    d = len(B[0]) if B and B[0] else 0
    ell = len(B)
    if d == 0:
        return ElementaryDivisorBasis(il.identity(ell), (), il.identity(ell))
    D, P, _ = il.smith(B)
    divisors = tuple(D[i][i] for i in range(d))
    if any(x == 0 for x in divisors):
        raise DependentColumns("sublattice basis has dependent columns")
    return ElementaryDivisorBasis(il.integer_inverse(P), divisors, P)


def coordinates(basis, v):
    """Coordinates of ``v`` with respect to ``basis.full_basis``."""
    return il.matvec(basis.transform, v)
