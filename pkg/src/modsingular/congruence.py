"""Verification of the weight-rank congruence for mod p^m singular expansions.

A form of scalar weight ``k`` that is mod ``p^m`` singular of rank ``r < n``
satisfies ``2k - r = 0 mod (p - 1) p^(m - 1)``. Besides checking that
arithmetic, this module re-executes the constructive chain behind it on a
truncated expansion:

* ``identity1_check``: the Fourier-Jacobi slice at the minimal witness ``T`` is
  supported on the orbit of ``blockdiag(0, T)`` under ``[[1, u], [0, 1]]``;
* ``identity3_check``: after keeping only indices with ``2 S_2 = 0 mod p^t``
  and setting the elliptic variable to zero, the slice is a theta series of
  the sublattice form times ``a(blockdiag(0, T))``;
* ``scalar_extraction`` and ``square_compare``: the same statement for one
  coordinate of an elementary-divisor basis of the weight-``k`` piece, and for
  its square.

Each check reports the trace bound it actually covered.
"""

from dataclasses import dataclass, field
from typing import Optional

from . import intlinalg as il
from .errors import NoUnitCoordinate, NoWitness
from .expansion import (
    check_modulus,
    collapse_z2,
    f0_extract,
    is_mod_singular,
    jacobi_slice,
    minimal_det_witness,
    p_rank,
    twist_filter,
)
from .symmat import (
    HalfIntegralMatrix,
    block_embed,
    gram_of_sublattice,
    orthogonal_sum,
    raw_psd,
    sublattice_matrix,
)
from .theta import QSeries, q_congruent, q_mul, representation_count, theta_qseries
from .weylrep import elementary_divisor_basis, graded_piece, rep_matrix, scalar_weight, coordinates

PASS = "PASS"
CONTRADICTION = "CONTRADICTION"
NOT_SINGULAR = "NOT-SINGULAR"
TRIVIAL = "TRIVIAL"


def theorem_modulus(p, m):
    return (p - 1) * p ** (m - 1)


def theorem_check(k, r, p, m):
    if m < 1:
        raise ValueError("m must be at least 1")
    return (2 * k - r) % theorem_modulus(p, m) == 0


@dataclass
class SingularityReport:
    p: int
    m: int
    p_rank: int
    singular_rank: Optional[int]
    trace_bound: int
    weight: int
    theorem_holds: Optional[bool] = None
    witnesses: list = field(default_factory=list)  # (T, coefficient mod p^m)
    identity1: Optional[dict] = None
    identity3: Optional[dict] = None
    extraction: Optional[dict] = None
    square: Optional[dict] = None

    @property
    def status(self):
        if self.p_rank < 0:
            return TRIVIAL
        if self.singular_rank is None:
            return NOT_SINGULAR
        failed = [c for c in (self.identity1, self.identity3, self.extraction, self.square)
                  if c is not None and c.get("verdict") is False]
        if not self.theorem_holds or failed:
            return CONTRADICTION
        return PASS

    def to_dict(self):
        out = {
            "status": self.status,
            "p": self.p,
            "m": self.m,
            "pRank": self.p_rank,
            "singularRank": self.singular_rank,
            "traceBound": self.trace_bound,
            "theorem": None,
            "witnesses": [{"T": list(T.upper()), "residues": list(v)} for T, v in self.witnesses],
            "identity1": self.identity1,
            "identity3": self.identity3,
            "extraction": self.extraction,
            "squareCompare": self.square,
        }
        if self.singular_rank is not None:
            out["theorem"] = {
                "lhs": 2 * self.weight - self.singular_rank,
                "modulus": theorem_modulus(self.p, self.m),
                "holds": self.theorem_holds,
            }
        return out

    def text(self):
        lines = [
            f"status: {self.status}",
            f"p: {self.p}  m: {self.m}  traceBound: {self.trace_bound}",
            f"pRank: {self.p_rank}",
            f"singularRank: {'-' if self.singular_rank is None else self.singular_rank}",
        ]
        if self.singular_rank is not None:
            lhs = 2 * self.weight - self.singular_rank
            lines.append(f"theorem: 2k-r = {lhs} mod {theorem_modulus(self.p, self.m)} -> "
                         f"{'holds' if self.theorem_holds else 'FAILS'}")
            for T, v in self.witnesses:
                lines.append(f"witness: {T} -> {' '.join(map(str, v))}")
        for name, part in (("identity1", self.identity1), ("identity3", self.identity3),
                           ("extraction", self.extraction), ("squareCompare", self.square)):
            if part is not None:
                lines.append(f"{name}: " + ", ".join(f"{k}={v}" for k, v in part.items()
                                                     if k not in ("failures", "g", "theta")))
        return "\n".join(lines) + "\n"


def report(F, p, m, max_witnesses=5):
    check_modulus(F, p, m)
    pr = p_rank(F, p)
    r = is_mod_singular(F, p, m) if pr >= 0 else None
    k = scalar_weight(F.rep)
    rep = SingularityReport(p, m, pr, r, F.trace_bound, k)
    if r is not None:
        rep.theorem_holds = theorem_check(k, r, p, m)
        q = p ** m
        for T, vec in f0_extract(F, r).items():
            if any(x % p for x in vec):
                rep.witnesses.append((T, tuple(x % q for x in vec)))
        rep.witnesses.sort(key=lambda w: (w[0].det2(), w[0].sort_key()))
        del rep.witnesses[max_witnesses:]
    return rep


# ---------------------------------------------------------------------------
# proof-chain identities


def choose_t(T, p, m):
    """Least ``t`` with ``{u : 2T u = 0 mod p^t}`` inside ``p^m Z^r``."""
    T = T if isinstance(T, HalfIntegralMatrix) else HalfIntegralMatrix(T)
    divisors = il.elementary_divisors(T.G)
    t = m + max((il.vp(d, p) for d in divisors), default=0)
    R = sublattice_matrix(T, p, t)
    assert all(x % p ** m == 0 for row in R for x in row), "sublattice not inside p^m Z^r"
    return t


def _witness(F, p, m):
    r = is_mod_singular(F, p, m)
    if r is None:
        raise NoWitness("expansion is not mod p^m singular of rank r < n within the bound")
    return r, minimal_det_witness(F, p, r)


def _unipotent(n, u):
    s = len(u)
    rows = []
    for i in range(n):
        row = [int(i == j) for j in range(n)]
        if i < s:
            for j in range(n - s):
                row[s + j] = u[i][j]
        rows.append(tuple(row))
    return tuple(rows)


def identity1_check(F, p, m):
    """Slice entries at ``(u T u^t, u T)`` equal ``rho([[1, u], [0, 1]]) a(blockdiag(0, T))``;
    every other entry vanishes mod ``p^m``.

    Returns ``(ok, failures, effective_bound)``; failures are ``(S1, 2 S_2)`` pairs.
    """
    r, T = _witness(F, p, m)
    q = p ** m
    n = F.n
    base = F.coeff(block_embed(T, n))
    Tinv = il.inverse(T.G)
    sl = jacobi_slice(F, T, r)
    failures = []
    for (S1, S2), vec in sl.entries.items():
        # u = S_2 T^-1 = (2 S_2)(2T)^-1; unique because T is invertible
        u = [[sum(S2[i][k] * Tinv[k][j] for k in range(r)) for j in range(r)] for i in range(len(S2))]
        integral = all(x.denominator == 1 for row in u for x in row)
        if integral:
            u = tuple(tuple(int(x) for x in row) for row in u)
            target = il.conjugate(u, T.G) if r else il.zeros(len(u), len(u))
            integral = target == S1.G
        if integral:
            expected = il.matvec(rep_matrix(F.rep, _unipotent(n, u)), base)
        else:
            expected = (0,) * len(vec)
        if any((a - b) % q for a, b in zip(vec, expected)):
            failures.append((S1, S2))
    return not failures, failures, sl.trace_bound


def _sublattice_form(T, p, t):
    R = sublattice_matrix(T, p, t)
    return R, gram_of_sublattice(T, R)


def identity3_check(F, p, m, t=None):
    """Twisted slice at ``z_2 = 0`` equals ``theta_Rform(S_1) * a(blockdiag(0, T))`` mod ``p^m``.

    Returns ``(ok, failures, effective_bound, t)``.
    """
    r, T = _witness(F, p, m)
    if t is None:
        t = choose_t(T, p, m)
    q = p ** m
    _, form = _sublattice_form(T, p, t)
    base = F.coeff(block_embed(T, F.n))
    sl = jacobi_slice(twist_filter(F, p, t, r), T, r)
    collapsed = collapse_z2(sl)
    failures = []
    for S1 in raw_psd(F.n - r, sl.trace_bound):
        count = representation_count(form.G, S1)
        got = collapsed.get(S1, (0,) * len(base))
        if any((a - count * b) % q for a, b in zip(got, base)):
            failures.append(S1)
    return not failures, failures, sl.trace_bound, t


@dataclass
class Extraction:
    j0: int
    g: QSeries
    c: int
    verdict: bool
    divisors: tuple
    products: tuple  # beta_j * alpha_j for every j
    form: HalfIntegralMatrix
    t: int
    bound: int
    in_piece: bool

    def to_dict(self):
        return {"j0": self.j0, "c": self.c, "verdict": self.verdict,
                "alphas": list(self.divisors), "betaAlpha": list(self.products),
                "t": self.t, "effectiveBound": self.bound, "inPiece": self.in_piece,
                "g": list(self.g.coeffs)}


def scalar_extraction(F, p, m, t=None):
    """One unit coordinate ``g`` of the collapsed twisted slice and the constant ``c``
    with ``g = c * theta_Rform mod p``.

    Requires ``n = r + 1``.
    """
    r, T = _witness(F, p, m)
    if F.n != r + 1:
        raise ValueError(f"scalar extraction needs n = r + 1 (n = {F.n}, r = {r})")
    if t is None:
        t = choose_t(T, p, m)
    _, form = _sublattice_form(T, p, t)
    k = scalar_weight(F.rep)
    piece = graded_piece(F.rep, k)
    ed = elementary_divisor_basis(piece.basis)
    d = ed.count
    base = F.coeff(block_embed(T, F.n))
    coords = coordinates(ed, base)
    in_piece = all(x == 0 for x in coords[d:])
    products = tuple(coords[:d])
    units = [j for j in range(d) if products[j] % p]
    if not units:
        raise NoUnitCoordinate("no coordinate of a(blockdiag(0, T)) is a unit mod p")
    j0 = units[0]
    c = products[j0]
    sl = jacobi_slice(twist_filter(F, p, t, r), T, r)
    collapsed = collapse_z2(sl)
    bound = sl.trace_bound
    g = []
    for j in range(bound + 1):
        S1 = HalfIntegralMatrix(((2 * j,),))
        vec = collapsed.get(S1, (0,) * F.ell)
        g.append(coordinates(ed, vec)[j0])
    g = QSeries(tuple(g))
    theta = theta_qseries(form, bound)
    verdict = q_congruent(g, theta.scale(c), p, 1)
    return Extraction(j0, g, c, verdict, ed.divisors, products, form, t, bound, in_piece)


def square_compare(g, R, c, p, m, bound=None):
    """``g^2 = c^2 theta_{R + R} mod p^m`` up to ``bound``."""
    bound = g.bound if bound is None else bound
    rr = orthogonal_sum(R, R)
    return q_congruent(q_mul(g, g), theta_qseries(rr, bound).scale(c * c), p, m, bound)


# ---------------------------------------------------------------------------
# full run


def pipeline(F, p, m, t=None):
    """Report plus every proof-chain check that applies to ``F``."""
    rep = report(F, p, m)
    if rep.singular_rank is None:
        return rep
    ok1, fail1, b1 = identity1_check(F, p, m)
    rep.identity1 = {"verdict": ok1, "effectiveBound": b1,
                     "failures": [[list(S1.upper()), [list(r) for r in S2]] for S1, S2 in fail1]}
    ok3, fail3, b3, t = identity3_check(F, p, m, t)
    rep.identity3 = {"verdict": ok3, "effectiveBound": b3, "t": t,
                     "failures": [list(S1.upper()) for S1 in fail3]}
    if F.n == rep.singular_rank + 1:
        ex = scalar_extraction(F, p, m, t)
        rep.extraction = ex.to_dict()
        rep.square = {"verdict": square_compare(ex.g, ex.form, ex.c, p, 1, ex.bound),
                      "modulus": p, "effectiveBound": ex.bound}
    return rep
