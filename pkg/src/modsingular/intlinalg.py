"""Exact linear algebra over the integers and rationals.

Matrices are tuples of row tuples of Python ints (or lists of lists while
being mutated). Nothing here uses floating point.
"""

from fractions import Fraction
from math import gcd


def as_matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(nrows, ncols):
    return tuple((0,) * ncols for _ in range(nrows))


def transpose(A):
    if not A:
        return ()
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    if not Bt:
        # B has no columns (or no rows)
        ncols = len(B[0]) if B else 0
        return tuple((0,) * ncols for _ in A)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def conjugate(U, G):
    """Return ``U * G * U^t``."""
    return matmul(matmul(U, G), transpose(U))


def block_diag(A, B):
    a, b = len(A), len(B)
    rows = [tuple(A[i]) + (0,) * b for i in range(a)]
    rows += [(0,) * a + tuple(B[i]) for i in range(b)]
    return tuple(rows)


def det(A):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pivot - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = pivot
    return sign * M[n - 1][n - 1]


def rref(A):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(A):
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def rational_kernel(A, ncols=None):
    """Basis (list of Fraction vectors) of the right kernel {x : A x = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    M, pivots = rref(A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(M, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def sparse_kernel(rows, ncols):
    """Kernel basis over Q of a sparse system; ``rows`` is an iterable of ``{col: value}``.

    Rows are reduced one at a time against the pivots found so far, so memory
    stays proportional to the rank.
    """
    pivots = {}  # pivot column -> normalised row (pivot entry 1)
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        while row:
            hit = next((c for c in row if c in pivots), None)
            if hit is None:
                break
            f = row[hit]
            for c, v in pivots[hit].items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {c: v * inv for c, v in row.items()}
        for other in pivots.values():
            f = other.get(pc)
            if f:
                for c, v in row.items():
                    nv = other.get(c, 0) - f * v
                    if nv:
                        other[c] = nv
                    else:
                        other.pop(c, None)
        pivots[pc] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for pc, row in pivots.items():
            if free in row:
                v[pc] = -row[free]
        basis.append(v)
    return basis


def clear_denominators(v):
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w] if g > 1 else w


def inverse(A):
    """Inverse over Q as a tuple of Fraction rows. Raises ZeroDivisionError if singular."""
    n = len(A)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(A)]
    M, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in M)


def integer_inverse(U):
    """Inverse of a unimodular integer matrix."""
    inv = inverse(U)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_row(A):
    """Row-style Hermite normal form with transform.

    Returns ``(H, W)`` with ``W`` unimodular and ``W * A = H``. ``H`` is in row
    echelon form with positive pivots and entries above each pivot reduced into
    ``[0, pivot)``; zero rows come last.
    """
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    H = [list(row) for row in A]
    W = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r + 1, nrows):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            if a and b % a == 0:
                q = b // a
                H[i] = [p - q * s for p, s in zip(H[i], H[r])]
                W[i] = [p - q * s for p, s in zip(W[i], W[r])]
                continue
            g, x, y = _xgcd(a, b)
            u, v = -b // g, a // g
            Hr, Hi = H[r], H[i]
            H[r] = [x * p + y * q for p, q in zip(Hr, Hi)]
            H[i] = [u * p + v * q for p, q in zip(Hr, Hi)]
            Wr, Wi = W[r], W[i]
            W[r] = [x * p + y * q for p, q in zip(Wr, Wi)]
            W[i] = [u * p + v * q for p, q in zip(Wr, Wi)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            W[r] = [-x for x in W[r]]
        piv = H[r][c]
        for i in range(r):
            q = H[i][c] // piv
            if q:
                H[i] = [p - q * s for p, s in zip(H[i], H[r])]
                W[i] = [p - q * s for p, s in zip(W[i], W[r])]
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, W))


def column_hermite(A):
    """Column-style HNF basis of the lattice spanned by the columns of ``A``.

    Returns an integer matrix whose nonzero columns form the basis (zero
    columns dropped).
    """
    H, _ = hermite_row(transpose(A))
    cols = [row for row in H if any(row)]
    if not cols:
        return tuple(() for _ in range(len(A)))
    return transpose(cols)


def left_kernel(A):
    """Saturated integer basis (as rows) of {v in Z^m : v * A = 0}."""
    H, W = hermite_row(A)
    return tuple(W[i] for i in range(len(H)) if not any(H[i]))


def smith(A):
    """Smith normal form with transforms.

    Returns ``(D, P, Q)`` with ``P``, ``Q`` unimodular, ``P * A * Q = D``
    diagonal, nonnegative, and ``D[i][i] | D[i+1][i+1]``.
    """
    m = len(A)
    n = len(A[0]) if A else 0
    D = [list(row) for row in A]
    P = [[int(i == j) for j in range(m)] for i in range(m)]
    Q = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def comb_rows(i, j, x, y, u, v):
        Di, Dj = D[i], D[j]
        D[i] = [x * a + y * b for a, b in zip(Di, Dj)]
        D[j] = [u * a + v * b for a, b in zip(Di, Dj)]
        Pi, Pj = P[i], P[j]
        P[i] = [x * a + y * b for a, b in zip(Pi, Pj)]
        P[j] = [u * a + v * b for a, b in zip(Pi, Pj)]

    def comb_cols(i, j, x, y, u, v):
        for M in (D, Q):
            for row in M:
                a, b = row[i], row[j]
                row[i] = x * a + y * b
                row[j] = u * a + v * b

    t = 0
    while t < min(m, n):
        # pivot: nonzero entry of least absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t] % D[t][t] == 0:
                    if D[i][t]:
                        comb_rows(t, i, 1, 0, -(D[i][t] // D[t][t]), 1)
                elif D[i][t]:
                    g, x, y = _xgcd(D[t][t], D[i][t])
                    comb_rows(t, i, x, y, -D[i][t] // g, D[t][t] // g)
            for j in range(t + 1, n):
                if D[t][j] % D[t][t] == 0:
                    if D[t][j]:
                        comb_cols(t, j, 1, 0, -(D[t][j] // D[t][t]), 1)
                elif D[t][j]:
                    g, x, y = _xgcd(D[t][t], D[t][j])
                    comb_cols(t, j, x, y, -D[t][j] // g, D[t][t] // g)
                    done = False
            if done:
                piv = D[t][t]
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % piv), None)
                if bad is not None:
                    # fold the offending row into row t to restore divisibility
                    i = bad[0]
                    D[t] = [a + b for a, b in zip(D[t], D[i])]
                    P[t] = [a + b for a, b in zip(P[t], P[i])]
                    done = False
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            P[t] = [-a for a in P[t]]
        t += 1
    return tuple(map(tuple, D)), tuple(map(tuple, P)), tuple(map(tuple, Q))


def elementary_divisors(A):
    D, _, _ = smith(A)
    return tuple(D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i])


def saturate(B):
    """Saturated integer basis (as columns) of (column span of B over Q) ∩ Z^n."""
    if not B or not B[0]:
        return B
    D, P, _ = smith(B)
    d = sum(1 for i in range(min(len(D), len(D[0]))) if D[i][i])
    Pinv = integer_inverse(P)
    return tuple(tuple(row[:d]) for row in Pinv)


def vp(x, p):
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v
