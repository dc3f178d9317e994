"""Truncated Fourier expansions of vector-valued Siegel modular forms.

Coefficients are stored only at canonical orbit representatives. Any other
index ``T`` is served through the transformation rule

    a(U T U^t) = chi(det U) rho(U) a(T),

using the unimodular ``U`` returned by :func:`modsingular.symmat.canonical`.
Block conventions: the definite block sits in the lower right corner, so
``blockdiag(0, T)`` carries the Fourier-Jacobi index ``T`` of size ``r``.
"""

from dataclasses import dataclass, field, replace
from itertools import product
from math import isqrt
from typing import Optional

from . import intlinalg as il
from .errors import IncompatibleModulus, MissingCoefficient, NoWitness, OutOfBound
from .symmat import (
    HalfIntegralMatrix,
    block_embed,
    canonical,
    enumerate_classes,
    is_canonical,
    is_psd,
    raw_psd,
)
from .weylrep import IntegralRep, rep_matrix


@dataclass(frozen=True)
class LevelSpec:
    N: int = 1
    Nprime: int = 1
    p_power: int = 1
    char_parity: int = 1

    def __post_init__(self):
        if self.char_parity not in (1, -1):
            raise ValueError("char_parity must be +1 or -1")

    def as_tuple(self):
        return (self.N, self.Nprime, self.p_power, self.char_parity)


def _reduce(vec, modulus):
    if modulus:
        return tuple(x % modulus for x in vec)
    return tuple(vec)


@dataclass(eq=False)
class FourierExpansion:
    n: int
    rep: IntegralRep
    level: LevelSpec
    modulus: int
    trace_bound: int
    coeffs: dict = field(repr=False)

    def __post_init__(self):
        if self.rep.n < self.n:
            raise ValueError("representation degree is smaller than the expansion degree")
        clean = {}
        for T, vec in self.coeffs.items():
            T = T if isinstance(T, HalfIntegralMatrix) else HalfIntegralMatrix(T)
            if T.n != self.n:
                raise ValueError(f"key {T} has the wrong size")
            if T.trace() > self.trace_bound:
                raise ValueError(f"key {T} exceeds the trace bound")
            if len(vec) != self.rep.ell:
                raise ValueError(f"coefficient at {T} has length {len(vec)} != {self.rep.ell}")
            if not is_canonical(T):
                raise ValueError(f"key {T} is not a canonical representative")
            clean[T] = _reduce(tuple(int(x) for x in vec), self.modulus)
        self.coeffs = clean

    @property
    def ell(self):
        return self.rep.ell

    def keys(self):
        return sorted(self.coeffs, key=HalfIntegralMatrix.sort_key)

    def items(self):
        return [(T, self.coeffs[T]) for T in self.keys()]

    def zero_vector(self):
        return (0,) * self.ell

    def rho(self, U):
        """``rho`` on ``GL(n)`` of this expansion, padding into the representation's degree."""
        k = self.rep.n - len(U)
        if k:
            U = il.block_diag(il.identity(k), U)
        return rep_matrix(self.rep, U)

    def chi(self, d):
        return self.level.char_parity if d == -1 else 1

    def coeff(self, T, strict=False):
        return get_coeff(self, T, strict)

    def __eq__(self, other):
        return (isinstance(other, FourierExpansion)
                and self.n == other.n
                and self.rep.weight == other.rep.weight
                and self.level == other.level
                and self.modulus == other.modulus
                and self.trace_bound == other.trace_bound
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        if (self.n, self.rep.weight, self.modulus, self.trace_bound) != (
                other.n, other.rep.weight, other.modulus, other.trace_bound):
            raise ValueError("incompatible expansions")
        keys = set(self.coeffs) | set(other.coeffs)
        zero = self.zero_vector()
        coeffs = {T: tuple(a + b for a, b in zip(self.coeffs.get(T, zero), other.coeffs.get(T, zero)))
                  for T in keys}
        return replace(self, coeffs=coeffs)

    def scaled(self, c):
        return replace(self, coeffs={T: tuple(c * x for x in v) for T, v in self.coeffs.items()})

    def reduced(self, modulus):
        if self.modulus and self.modulus % modulus:
            raise IncompatibleModulus(f"cannot reduce mod {modulus} from mod {self.modulus}")
        return replace(self, modulus=modulus, coeffs=dict(self.coeffs))


def get_coeff(F, T, strict=False):
    """``a_F(T)`` for any PSD ``T`` within the trace bound."""
    T = T if isinstance(T, HalfIntegralMatrix) else HalfIntegralMatrix(T)
    if T.trace() > F.trace_bound:
        raise OutOfBound(f"trace of {T} exceeds the bound {F.trace_bound}")
    Tc, U = canonical(T)
    if Tc not in F.coeffs:
        if strict:
            raise MissingCoefficient(f"no coefficient stored for class {Tc}")
        return F.zero_vector()
    stored = F.coeffs[Tc]
    if Tc == T and U == il.identity(T.n):
        return stored
    # a(T_can) = chi(det U) rho(U) a(T)  =>  a(T) = chi(det U) rho(U^-1) a(T_can)
    Uinv = il.integer_inverse(U)
    vec = il.matvec(F.rho(Uinv), stored)
    if F.chi(il.det(U)) == -1:
        vec = tuple(-x for x in vec)
    return _reduce(vec, F.modulus)


def rank_subseries(F, r):
    if isinstance(F, TwistedExpansion):
        return replace(F, base=rank_subseries(F.base, r))
    zero = F.zero_vector()
    return replace(F, coeffs={T: (v if T.rank() == r else zero) for T, v in F.coeffs.items()})


def f0_extract(F, r):
    """``T -> a_F(blockdiag(0, T))`` over definite canonical ``T`` of size ``r``."""
    out = {}
    for T in enumerate_classes(r, F.trace_bound):
        if T.rank() == r:
            out[T] = F.coeff(block_embed(T, F.n))
    return out


def phi_operator(F):
    """Siegel's Phi: restrict to indices whose first row and column vanish."""
    if F.n < 1:
        raise ValueError("Phi needs degree >= 1")
    coeffs = {T: F.coeff(block_embed(T, F.n)) for T in enumerate_classes(F.n - 1, F.trace_bound)}
    return FourierExpansion(F.n - 1, F.rep, F.level, F.modulus, F.trace_bound, coeffs)


# ---------------------------------------------------------------------------
# partial twist


def s2_block(T, r):
    """Doubled upper-right block ``2 S_2`` of ``T`` for the split ``(n - r, r)``."""
    s = T.n - r
    return tuple(row[s:] for row in T.G[:s])


@dataclass(eq=False)
class TwistedExpansion:
    """Subseries of ``base`` supported on indices with ``2 S_2 = 0 mod p^t``.

    This subseries is only invariant under block-diagonal unimodular changes,
    so it is kept as a filtered view of ``base`` rather than re-stored.
    """

    base: object
    p: int
    t: int
    r: int

    n = property(lambda self: self.base.n)
    rep = property(lambda self: self.base.rep)
    modulus = property(lambda self: self.base.modulus)
    trace_bound = property(lambda self: self.base.trace_bound)
    ell = property(lambda self: self.base.ell)

    @property
    def level(self):
        lv = self.base.level
        return replace(lv, N=lv.N * self.p ** (2 * self.t))

    def zero_vector(self):
        return self.base.zero_vector()

    def keeps(self, T):
        q = self.p ** self.t
        return all(x % q == 0 for row in s2_block(T, self.r) for x in row)

    def coeff(self, T, strict=False):
        T = T if isinstance(T, HalfIntegralMatrix) else HalfIntegralMatrix(T)
        if not self.keeps(T):
            if T.trace() > self.trace_bound:
                raise OutOfBound(f"trace of {T} exceeds the bound {self.trace_bound}")
            return self.zero_vector()
        return self.base.coeff(T, strict)


def twist_filter(F, p, t, r):
    """Keep coefficients whose off-diagonal block satisfies ``2 S_2 = 0 mod p^t``."""
    if t == 0:
        return F
    if isinstance(F, TwistedExpansion) and (F.p, F.r) == (p, r) and F.t >= t:
        return F
    return TwistedExpansion(F, p, t, r)


def cyclotomic_reduce(counts, p, t):
    """Reduce ``sum_e counts[e] zeta^e`` (``zeta`` a primitive ``p^t``-th root of unity).

    Returns the coordinates in the power basis ``{zeta^e : e // p^(t-1) < p - 1}``
    of the cyclotomic field, so the element is the rational integer ``c`` iff the
    result is ``(c, 0, ..., 0)``.
    """
    q = p ** t
    step = p ** (t - 1)
    c = list(counts)
    for e in range(q - 1, -1, -1):
        if e // step == p - 1 and c[e]:
            a = e - (p - 1) * step
            for j in range(p - 1):
                c[a + j * step] -= c[e]
            c[e] = 0
    return tuple(c[: (p - 1) * step])


def twist_character_sum(M, p, t):
    """Exact value of ``sum_{R mod p^t} exp(2 pi i tr(R M^t) / p^t)`` as an element
    of the cyclotomic field in reduced coordinates (see :func:`cyclotomic_reduce`).

    The exponent distribution is computed as the cyclic convolution of the
    per-entry distributions, which is the sum over all ``R`` grouped by exponent.
    """
    q = p ** t
    counts = [0] * q
    counts[0] = 1
    for row in M:
        for m in row:
            entry = [0] * q
            for x in range(q):
                entry[(x * m) % q] += 1
            new = [0] * q
            for a, ca in enumerate(counts):
                if ca:
                    for b, cb in enumerate(entry):
                        if cb:
                            new[(a + b) % q] += ca * cb
            counts = new
    return cyclotomic_reduce(counts, p, t)


# ---------------------------------------------------------------------------
# Fourier-Jacobi slices


@dataclass
class JacobiSlice:
    T: HalfIntegralMatrix
    r: int
    entries: dict  # (S1: HalfIntegralMatrix, 2*S2 as tuple of rows) -> vector
    trace_bound: int


def _s2_candidates(S1, T):
    s, r = S1.n, T.n
    ranges = []
    for i in range(s):
        for j in range(r):
            b = isqrt(S1.G[i][i] * T.G[j][j])
            ranges.append(range(-b, b + 1))
    for flat in product(*ranges):
        yield tuple(tuple(flat[i * r:(i + 1) * r]) for i in range(s))


def assemble(S1, S2, T):
    s, r = S1.n, T.n
    rows = [tuple(S1.G[i]) + tuple(S2[i]) for i in range(s)]
    rows += [tuple(S2[i][j] for i in range(s)) + tuple(T.G[j]) for j in range(r)]
    return HalfIntegralMatrix(tuple(rows))


def jacobi_slice(F, T, r=None):
    """All ``(S1, 2 S2)`` with ``[[S1, S2], [S2^t, T]]`` PSD inside the trace bound."""
    T = T if isinstance(T, HalfIntegralMatrix) else HalfIntegralMatrix(T)
    r = T.n if r is None else r
    s = F.n - r
    entries = {}
    budget = F.trace_bound - T.trace()
    if budget >= 0:
        for S1 in raw_psd(s, budget):
            for S2 in _s2_candidates(S1, T):
                full = assemble(S1, S2, T)
                if is_psd(full):
                    entries[(S1, S2)] = F.coeff(full)
    return JacobiSlice(T, r, entries, budget)


def collapse_z2(slice_):
    """Set ``z_2 = 0``: sum the slice over the off-diagonal block."""
    out = {}
    for (S1, _), vec in slice_.entries.items():
        if S1 in out:
            out[S1] = tuple(a + b for a, b in zip(out[S1], vec))
        else:
            out[S1] = tuple(vec)
    return out


# ---------------------------------------------------------------------------
# p-rank and singularity


def _nonzero_mod(vec, q):
    return any(x % q for x in vec)


def p_rank(F, p):
    """Largest rank of a stored index whose coefficient is nonzero mod ``p`` (-1 if none)."""
    best = -1
    for T, vec in F.coeffs.items():
        if _nonzero_mod(vec, p):
            best = max(best, T.rank())
    return best


def check_modulus(F, p, m):
    if F.modulus and F.modulus % (p ** m):
        raise IncompatibleModulus(f"expansion known mod {F.modulus}, cannot test mod {p}^{m}")


def is_mod_singular(F, p, m) -> Optional[int]:
    """The rank ``r < n`` for which ``F`` is mod ``p^m`` singular, up to the trace bound."""
    check_modulus(F, p, m)
    r = p_rank(F, p)
    if r < 0 or r >= F.n:
        return None
    q = p ** m
    for T, vec in F.coeffs.items():
        if T.rank() > r and _nonzero_mod(vec, q):
            return None
    return r


def minimal_det_witness(F, p, r):
    """Definite ``T`` of size ``r`` with ``a(blockdiag(0, T))`` nonzero mod ``p`` and
    ``det(2T)`` minimal (ties broken by the canonical key)."""
    candidates = [T for T, vec in f0_extract(F, r).items() if _nonzero_mod(vec, p)]
    if not candidates:
        raise NoWitness(f"no rank-{r} coefficient is nonzero mod {p}")
    return min(candidates, key=lambda T: (T.det2(), T.sort_key()))
