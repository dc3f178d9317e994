"""Half-integral symmetric matrices: the index set of Siegel Fourier coefficients.

A matrix ``T`` with integral diagonal and half-integral off-diagonal entries is
stored through its doubled Gram matrix ``G = 2T``, which is an integer matrix
with even diagonal. All arithmetic is exact.

Orbit representatives under ``T -> U T U^t`` (``U`` in ``GL(n, Z)``) are
produced by :func:`canonical`: the radical is split off, the definite part is
size-reduced, and then the lexicographically smallest Gram matrix over all
bases whose vectors have norm at most ``M*`` is selected, where ``M*`` is the
least value for which such a basis exists. Both ``M*`` and the key are
functions of the isometry class only, so the result is an orbit invariant.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import ceil, floor, isqrt, sqrt

from . import intlinalg as il
from .errors import NotDefinite, NotFullRank, NotPsd


@dataclass(frozen=True, order=False)
class HalfIntegralMatrix:
    G: tuple

    def __post_init__(self):
        G = il.as_matrix(self.G)
        n = len(G)
        for i in range(n):
            if len(G[i]) != n:
                raise ValueError("matrix is not square")
            if G[i][i] % 2:
                raise ValueError("diagonal of 2T must be even")
            for j in range(i):
                if G[i][j] != G[j][i]:
                    raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "G", G)

    @classmethod
    def from_upper(cls, n, entries):
        entries = list(entries)
        if len(entries) != n * (n + 1) // 2:
            raise ValueError(f"expected {n * (n + 1) // 2} entries, got {len(entries)}")
        G = [[0] * n for _ in range(n)]
        it = iter(entries)
        for i in range(n):
            for j in range(i, n):
                G[i][j] = G[j][i] = int(next(it))
        return cls(tuple(map(tuple, G)))

    @classmethod
    def zero(cls, n):
        return cls(il.zeros(n, n))

    @property
    def n(self):
        return len(self.G)

    def upper(self):
        n = self.n
        return tuple(self.G[i][j] for i in range(n) for j in range(i, n))

    def key(self):
        return tuple(x for row in self.G for x in row)

    def trace(self):
        return sum(self.G[i][i] for i in range(self.n)) // 2

    def rank(self):
        return rank(self)

    def is_psd(self):
        return is_psd(self)

    def det2(self):
        """Determinant of the doubled matrix 2T."""
        return il.det(self.G)

    def sort_key(self):
        return (self.trace(), self.key())

    def __str__(self):
        return " ".join(str(x) for x in self.upper())


def _as_him(A):
    return A if isinstance(A, HalfIntegralMatrix) else HalfIntegralMatrix(A)


def is_psd(A):
    """Exact positive semidefiniteness: every principal minor of 2T is >= 0."""
    G = _as_him(A).G
    n = len(G)
    for k in range(1, n + 1):
        for idx in combinations(range(n), k):
            if il.det(tuple(tuple(G[i][j] for j in idx) for i in idx)) < 0:
                return False
    return True


def is_definite(A):
    G = _as_him(A).G
    return all(il.det(tuple(row[:k] for row in G[:k])) > 0 for k in range(1, len(G) + 1))


def rank(A):
    return il.rank(_as_him(A).G)


# ---------------------------------------------------------------------------
# short vectors


def _cholesky_coeffs(G):
    r = len(G)
    Q = [[float(x) for x in row] for row in G]
    for i in range(r):
        for j in range(i + 1, r):
            Q[j][i] = Q[i][j]
            Q[i][j] = Q[i][j] / Q[i][i]
        for k in range(i + 1, r):
            for l in range(k, r):
                Q[k][l] -= Q[k][i] * Q[i][l]
    return Q


def short_vectors(G, bound):
    """All ``x`` in ``Z^r`` with ``x^t G x <= bound`` for definite integer ``G``.

    Fincke-Pohst enumeration in floating point with a safety margin, followed
    by an exact filter; the output is exact. Returned as ``(x, norm)`` pairs
    in lexicographic order of ``x``.
    """
    r = len(G)
    if r == 0:
        return [((), 0)]
    if bound < 0:
        return []
    Q = _cholesky_coeffs(G)
    if any(Q[i][i] <= 0 for i in range(r)):
        raise NotDefinite("short_vectors needs a positive definite form")
    eps = 1e-9 * (1 + bound)
    x = [0] * r
    out = []

    def rec(i, remaining):
        c = -sum(Q[i][j] * x[j] for j in range(i + 1, r))
        span = sqrt(max(remaining, 0.0) / Q[i][i]) + 1e-7
        for v in range(ceil(c - span), floor(c + span) + 1):
            rem = remaining - Q[i][i] * (v - c) ** 2
            if rem < -eps:
                continue
            x[i] = v
            if i == 0:
                norm = sum(G[a][b] * x[a] * x[b] for a in range(r) for b in range(r))
                if norm <= bound:
                    out.append((tuple(x), norm))
            else:
                rec(i - 1, rem)
        x[i] = 0

    rec(r - 1, float(bound))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# radical split


@dataclass(frozen=True)
class RadicalSplit:
    U: tuple
    r: int
    definite_part: HalfIntegralMatrix


def radical_split(A):
    A = _as_him(A)
    if not is_psd(A):
        raise NotPsd(f"not positive semidefinite: {A}")
    return _radical_split(A.G)


@lru_cache(maxsize=None)
def _radical_split(G):
    n = len(G)
    if il.det(G) != 0:
        return RadicalSplit(il.identity(n), n, HalfIntegralMatrix(G))
    H, W = il.hermite_row(G)
    kernel = [W[i] for i in range(n) if not any(H[i])]
    rest = [W[i] for i in range(n) if any(H[i])]
    U = tuple(kernel + rest)
    r = len(rest)
    C = il.conjugate(U, G)
    D = tuple(row[n - r:] for row in C[n - r:])
    assert all(not any(row) for row in C[: n - r]), "radical rows must vanish"
    return RadicalSplit(U, r, HalfIntegralMatrix(D))


# ---------------------------------------------------------------------------
# canonical form


def _size_reduce(D):
    """Greedy pairwise reduction of a definite doubled Gram matrix.

    Returns ``(B, B D B^t)``.
    """
    r = len(D)
    B = [list(row) for row in il.identity(r)]
    Gm = [list(row) for row in D]
    changed = True
    while changed:
        changed = False
        order = sorted(range(r), key=lambda i: Gm[i][i])
        for i in range(r):
            for j in order:
                if i == j:
                    continue
                q = Gm[i][j] / Gm[j][j]
                k = floor(q + 0.5)
                if k == 0 or Gm[j][j] * k * k - 2 * k * Gm[i][j] >= 0:
                    continue
                # b_i <- b_i - k b_j strictly decreases the norm of b_i
                B[i] = [a - k * b for a, b in zip(B[i], B[j])]
                Gm = [list(row) for row in il.conjugate(B, D)]
                changed = True
    return tuple(map(tuple, B)), il.conjugate(B, D)


@lru_cache(maxsize=200000)
def _is_primitive(rows):
    divisors = il.elementary_divisors(rows)
    return len(divisors) == len(rows) and all(d == 1 for d in divisors)


def _min_basis(D, cand):
    r = len(D)
    vecs = [v for v, _ in cand]
    norms = [nv for _, nv in cand]
    Dv = [il.matvec(D, v) for v in vecs]
    best = [None, None]
    chosen = []

    def dfs(prefix):
        level = len(chosen)
        options = []
        for idx in range(len(vecs)):
            lk = (norms[idx],) + tuple(-sum(a * b for a, b in zip(Dv[c], vecs[idx])) for c in chosen)
            options.append((lk, idx))
        options.sort()
        for lk, idx in options:
            key = prefix + lk
            if best[0] is not None and key > best[0][: len(key)]:
                break
            rows = tuple(vecs[c] for c in chosen) + (vecs[idx],)
            if not _is_primitive(rows):
                continue
            chosen.append(idx)
            if level == r - 1:
                if best[0] is None or key < best[0]:
                    best[0], best[1] = key, rows
            else:
                dfs(key)
            chosen.pop()

    dfs(())
    return best[1]


@lru_cache(maxsize=None)
def _canonical_definite(D):
    r = len(D)
    if r == 0:
        return (), ()
    if r == 1:
        return D, ((1,),)
    B0, D0 = _size_reduce(D)
    bound = max(D0[i][i] for i in range(r))
    allvecs = [(v, nv) for v, nv in short_vectors(D0, bound) if nv > 0]
    for M in sorted({nv for _, nv in allvecs}):
        cand = [(v, nv) for v, nv in allvecs if nv <= M]
        if il.rank(tuple(v for v, _ in cand)) < r:
            continue
        basis = _min_basis(D0, cand)
        if basis is not None:
            B = il.matmul(basis, B0)
            return il.conjugate(B, D), B
    raise AssertionError("reduced basis must be found at its own maximal norm")


@lru_cache(maxsize=None)
def _canonical(G):
    n = len(G)
    split = _radical_split(G)
    r = split.r
    Dc, B = _canonical_definite(split.definite_part.G)
    U = il.matmul(il.block_diag(il.identity(n - r), B), split.U)
    Gc = il.block_diag(il.zeros(n - r, n - r), Dc)
    assert il.conjugate(U, G) == Gc
    return HalfIntegralMatrix(Gc), U


def canonical(A):
    """Canonical orbit representative.

    Returns ``(T_can, U)`` with ``U`` unimodular and ``U T U^t = T_can``.
    """
    A = _as_him(A)
    if not is_psd(A):
        raise NotPsd(f"not positive semidefinite: {A}")
    return _canonical(A.G)


def is_canonical(A):
    return canonical(A)[0] == _as_him(A)


# ---------------------------------------------------------------------------
# isometries


def _isometries(GA, GB, first_only):
    n = len(GA)
    if len(GB) != n:
        return []
    if n == 0:
        return [()]
    vecs = short_vectors(GA, max(GB[i][i] for i in range(n)))
    by_norm = {}
    for v, nv in vecs:
        by_norm.setdefault(nv, []).append(v)
    Av = {v: il.matvec(GA, v) for v, _ in vecs}
    found = []
    rows = []

    def dfs(i):
        for v in by_norm.get(GB[i][i], ()):
            if all(sum(a * b for a, b in zip(Av[rows[j]], v)) == GB[j][i] for j in range(i)):
                rows.append(v)
                if i == n - 1:
                    found.append(tuple(rows))
                    if first_only:
                        return True
                elif dfs(i + 1):
                    return True
                rows.pop()
        return False

    dfs(0)
    return found


def isometric(A, B):
    """A unimodular ``U`` with ``U A U^t = B`` for definite ``A``, ``B``, or ``None``."""
    A, B = _as_him(A), _as_him(B)
    if A.n != B.n or A.det2() != B.det2():
        return None
    if not (is_definite(A) and is_definite(B)):
        raise NotDefinite("isometric expects definite forms")
    found = _isometries(A.G, B.G, True)
    return found[0] if found else None


def automorphisms(A):
    """All ``U`` in ``GL(n, Z)`` with ``U A U^t = A``."""
    A = _as_him(A)
    if not is_definite(A):
        raise NotDefinite("automorphism group of a non-definite form is infinite")
    return _isometries(A.G, A.G, False)


# ---------------------------------------------------------------------------
# enumeration


def raw_psd(n, bound):
    """Every PSD half-integral ``n x n`` matrix with trace at most ``bound``."""
    out = []
    for diag in _compositions(n, bound):
        d = [2 * x for x in diag]
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        ranges = [range(-isqrt(d[i] * d[j]), isqrt(d[i] * d[j]) + 1) for i, j in pairs]
        for offs in product(*ranges):
            G = [[0] * n for _ in range(n)]
            for i in range(n):
                G[i][i] = d[i]
            for (i, j), v in zip(pairs, offs):
                G[i][j] = G[j][i] = v
            G = tuple(map(tuple, G))
            if is_psd(G):
                out.append(HalfIntegralMatrix(G))
    return out


def _compositions(n, bound):
    if n == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in _compositions(n - 1, bound - first):
            yield (first,) + rest


def enumerate_classes(n, bound):
    """One canonical representative per orbit of PSD ``T`` with ``trace(T) <= bound``."""
    reps = {canonical(A)[0] for A in raw_psd(n, bound)}
    return sorted(reps, key=HalfIntegralMatrix.sort_key)


# ---------------------------------------------------------------------------
# block constructions


def block_embed(T, n):
    T = _as_him(T)
    if T.n > n:
        raise ValueError("block larger than target degree")
    return HalfIntegralMatrix(il.block_diag(il.zeros(n - T.n, n - T.n), T.G))


def orthogonal_sum(A, B):
    return HalfIntegralMatrix(il.block_diag(_as_him(A).G, _as_him(B).G))


def sublattice_matrix(T, p, t):
    """HNF basis (columns) of ``{u in Z^r : (2T) u = 0 mod p^t}``.

    Obtained from the integer kernel of the stacked system ``[2T ; p^t I]``.
    """
    T = _as_him(T)
    r = T.n
    if T.rank() != r:
        raise NotFullRank("sublattice_matrix needs an invertible T")
    if r == 0:
        return ()
    stacked = T.G + tuple(tuple(p ** t if i == j else 0 for j in range(r)) for i in range(r))
    kernel = il.left_kernel(stacked)
    generators = il.transpose(tuple(row[:r] for row in kernel))
    R = il.column_hermite(generators)
    if len(R[0]) != r:
        raise NotFullRank("sublattice basis is not of full rank")
    return R


def gram_of_sublattice(T, R):
    """The form ``R^t T R`` (doubled Gram ``R^t (2T) R``)."""
    T = _as_him(T)
    if T.n == 0:
        return T
    return HalfIntegralMatrix(il.matmul(il.matmul(il.transpose(R), T.G), R))
