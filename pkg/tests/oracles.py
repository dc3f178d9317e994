"""Independent reference computations used as test oracles.

None of these share code paths with the package: lattice counts use explicit
coordinate models and box enumeration, exponential sums use floating complex
arithmetic, automorphism groups use exhaustive search over bounded matrices.
"""

import cmath
from fractions import Fraction
from itertools import product


def e8_vectors(norm):
    """Vectors of squared length ``norm`` in the even coordinate model of E8,
    scaled by 2 so that all coordinates are integers (sum of squares = 4 * norm)."""
    out = []
    target = 4 * norm
    # integer part: coordinates in Z with even sum, scaled by 2 -> even entries
    lim = 2
    while (2 * lim) ** 2 <= target:
        lim += 1
    rng = range(-lim, lim + 1)
    for half in (False, True):
        vals = [2 * x + (1 if half else 0) for x in rng]
        vals = sorted({v for v in vals if v * v <= target})

        def rec(prefix, remaining):
            if len(prefix) == 8:
                if remaining == 0 and (sum(prefix) // 1) % 4 == 0:
                    out.append(tuple(prefix))
                return
            for v in vals:
                if v * v <= remaining:
                    rec(prefix + [v], remaining - v * v)

        rec([], target)
    return out


def a2_vectors(norm):
    """Vectors of ``{x in Z^3 : sum x = 0}`` with ``x.x = norm``."""
    lim = int(norm ** 0.5) + 1
    return [v for v in product(range(-lim, lim + 1), repeat=3)
            if sum(v) == 0 and sum(a * a for a in v) == norm]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def count_gram(vectors_by_norm, G, scale=1):
    """Number of tuples of model vectors with pairwise products ``G`` (times ``scale``)."""
    n = len(G)

    def rec(chosen):
        i = len(chosen)
        if i == n:
            return 1
        total = 0
        for v in vectors_by_norm[G[i][i]]:
            if all(dot(chosen[j], v) == scale * G[j][i] for j in range(i)):
                total += rec(chosen + [v])
        return total

    return rec([])


def brute_automorphisms(G, box=2):
    n = len(G)
    out = []
    for flat in product(range(-box, box + 1), repeat=n * n):
        U = [flat[i * n:(i + 1) * n] for i in range(n)]
        ok = all(sum(U[i][a] * G[a][b] * U[j][b] for a in range(n) for b in range(n)) == G[i][j]
                 for i in range(n) for j in range(n))
        if ok:
            out.append(tuple(map(tuple, U)))
    return out


def exp_sum_complex(M, p, t):
    """``sum_{R mod p^t} exp(2 pi i tr(R M^t) / p^t)`` by direct floating summation."""
    q = p ** t
    entries = [x for row in M for x in row]
    total = 0j
    for R in product(range(q), repeat=len(entries)):
        total += cmath.exp(2j * cmath.pi * sum(a * b for a, b in zip(R, entries)) / q)
    return total


def brute_rep_count(G_lattice, T2, box):
    """``#{X in [-box, box]^(m x n) : X^t G X = T2}`` by exhaustive search."""
    m, n = len(G_lattice), len(T2)
    cols = list(product(range(-box, box + 1), repeat=m))

    def norm(u, v):
        return sum(u[a] * G_lattice[a][b] * v[b] for a in range(m) for b in range(m))

    total = 0
    for X in product(cols, repeat=n):
        if all(norm(X[i], X[j]) == T2[i][j] for i in range(n) for j in range(n)):
            total += 1
    return total


def weyl_dimension_fraction(lam):
    """Weyl dimension via rational hook-content formula (independent of the package)."""
    n = len(lam)
    val = Fraction(1)
    for i in range(n):
        for j in range(lam[i]):
            content = j - i
            arm = lam[i] - j - 1
            leg = sum(1 for k in range(i + 1, n) if lam[k] > j)
            val *= Fraction(n + content, arm + leg + 1)
    return val
