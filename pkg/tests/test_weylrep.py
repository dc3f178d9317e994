import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from oracles import weyl_dimension_fraction
from modsingular import intlinalg as il
from modsingular.errors import DependentColumns, InvalidWeight
from modsingular.weylrep import (
    build_rep,
    coordinates,
    elementary_divisor_basis,
    graded_piece,
    parse_weight,
    rep_matrix,
    semistandard_tableaux,
    weight_grading,
    weyl_dimension,
)


def partitions(total, parts, largest=None):
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        for rest in partitions(total - first, parts - 1, first):
            yield (first,) + rest


def random_unimodular(rng, n):
    U = [list(r) for r in il.identity(n)]
    for _ in range(4):
        if n == 1:
            U[0][0] = -U[0][0]
            continue
        i, j = rng.sample(range(n), 2)
        c = rng.choice([-1, 1, 2])
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    return tuple(map(tuple, U))


def test_weyl_dimension_equals_tableau_count():
    for n in range(1, 5):
        for size in range(0, 7):
            for lam in partitions(size, n):
                count = len(semistandard_tableaux(lam, n))
                assert count == weyl_dimension(lam) == weyl_dimension_fraction(lam)


def test_parse_weight():
    assert parse_weight("4,2,0") == (4, 2, 0)
    for bad in ("1,2", "a,b", "-1,-2", ""):
        with pytest.raises(InvalidWeight):
            parse_weight(bad)


def test_known_dimensions():
    assert build_rep(3, (2, 1, 0)).ell == 8
    assert build_rep(2, (4, 4)).ell == 1
    assert build_rep(2, (3, 0)).ell == 4


def test_standard_and_determinant():
    std = build_rep(3, (1, 0, 0))
    U = ((1, 2, 0), (0, 1, 0), (3, 1, 1))
    assert rep_matrix(std, U) == U
    detrep = build_rep(3, (2, 2, 2))
    V = ((0, 1, 0), (1, 0, 0), (0, 0, 1))
    assert rep_matrix(detrep, V) == ((1,),)
    odd = build_rep(3, (1, 1, 1))
    assert rep_matrix(odd, V) == ((-1,),)


def test_homomorphism_200_pairs():
    rng = random.Random(5)
    reps = [build_rep(2, (3, 1)), build_rep(3, (2, 1, 0)), build_rep(3, (2, 0, 0)),
            build_rep(4, (1, 1, 0, 0))]
    for k in range(200):
        rep = reps[k % len(reps)]
        U, V = random_unimodular(rng, rep.n), random_unimodular(rng, rep.n)
        assert rep_matrix(rep, il.matmul(U, V)) == il.matmul(rep_matrix(rep, U), rep_matrix(rep, V))


def test_homomorphism_for_nonunimodular_integer_matrices():
    rep = build_rep(3, (2, 1, 0))
    rng = random.Random(9)
    for _ in range(20):
        A = tuple(tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3))
        B = tuple(tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3))
        assert rep_matrix(rep, il.matmul(A, B)) == il.matmul(rep_matrix(rep, A), rep_matrix(rep, B))


def test_grading_dimensions():
    rep = build_rep(3, (2, 1, 0))
    assert [(p.weight, p.dim) for p in weight_grading(rep)] == [(0, 2), (1, 4), (2, 2)]
    for lam in ((7, 1, 1), (3, 1, 0), (2, 2)):
        rep = build_rep(len(lam), lam)
        assert sum(p.dim for p in weight_grading(rep)) == rep.ell
    assert graded_piece(build_rep(3, (7, 1, 1)), 1).dim == 7


def test_elementary_divisor_basis_against_sympy():
    rng = random.Random(2)
    for _ in range(30):
        ell, d = rng.randint(2, 4), rng.randint(1, 2)
        B = tuple(tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(ell))
        if il.rank(B) < d:
            with pytest.raises(DependentColumns):
                elementary_divisor_basis(B)
            continue
        ed = elementary_divisor_basis(B)
        ref = smith_normal_form(Matrix(B), domain=ZZ)
        assert list(ed.divisors) == [abs(int(ref[i, i])) for i in range(d)]
        assert all(b % a == 0 for a, b in zip(ed.divisors, ed.divisors[1:]))
        assert abs(il.det(ed.full_basis)) == 1
        # alpha_j a_j span the same lattice as B: coordinates of B's columns vanish past d
        for col in il.transpose(B):
            c = coordinates(ed, col)
            assert all(x == 0 for x in c[d:])
            assert all(c[j] % ed.divisors[j] == 0 for j in range(d))


def test_unit_divisors_on_saturated_piece():
    piece = graded_piece(build_rep(3, (7, 1, 1)), 1)
    ed = elementary_divisor_basis(piece.basis)
    assert ed.divisors == (1,) * 7


def test_tableaux_are_semistandard():
    for tab in semistandard_tableaux((3, 2, 0), 3):
        for row in tab:
            assert list(row) == sorted(row)
        for j in range(len(tab[1])):
            assert tab[0][j] < tab[1][j]
    assert len(set(semistandard_tableaux((2, 1), 2))) == 2
    assert all(len(t) == 1 for t in semistandard_tableaux((2,), 3))
