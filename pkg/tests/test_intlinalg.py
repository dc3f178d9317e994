import random

from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from modsingular import intlinalg as il

small = st.integers(min_value=-9, max_value=9)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def any_matrix(draw):
    r = draw(st.integers(1, 4))
    c = draw(st.integers(1, 4))
    return tuple(map(tuple, draw(matrices(r, c))))


def test_det_matches_sympy():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 5)
        A = tuple(tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(n))
        assert il.det(A) == Matrix(A).det()


@settings(max_examples=150, deadline=None)
@given(any_matrix())
def test_smith_transforms_and_chain(A):
    D, P, Q = il.smith(A)
    assert il.matmul(il.matmul(P, A), Q) == D
    assert abs(il.det(P)) == 1 and abs(il.det(Q)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert diag[len(nonzero):] == [0] * (len(diag) - len(nonzero))


@settings(max_examples=100, deadline=None)
@given(any_matrix())
def test_smith_diagonal_agrees_with_sympy(A):
    D, _, _ = il.smith(A)
    ref = smith_normal_form(Matrix(A), domain=ZZ)
    ours = [D[i][i] for i in range(min(len(D), len(D[0])))]
    theirs = [abs(int(ref[i, i])) for i in range(min(ref.shape))]
    assert ours == theirs


@settings(max_examples=100, deadline=None)
@given(any_matrix())
def test_hermite_row_transform(A):
    H, W = il.hermite_row(A)
    assert il.matmul(W, A) == H
    assert abs(il.det(W)) == 1


@settings(max_examples=100, deadline=None)
@given(any_matrix())
def test_left_kernel_annihilates(A):
    K = il.left_kernel(A)
    for row in K:
        assert all(x == 0 for x in il.matvec(il.transpose(A), row))
    assert len(K) == len(A) - il.rank(A)


@settings(max_examples=100, deadline=None)
@given(any_matrix())
def test_sparse_kernel_matches_dense(A):
    ncols = len(A[0])
    rows = [{c: v for c, v in enumerate(row) if v} for row in A]
    sparse = il.sparse_kernel(rows, ncols)
    assert len(sparse) == ncols - il.rank(A)
    for v in sparse:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)


def test_integer_inverse_and_saturate():
    U = ((2, 1), (1, 1))
    assert il.matmul(U, il.integer_inverse(U)) == il.identity(2)
    # span of (2, 4) saturates to (1, 2)
    assert il.saturate(((2,), (4,))) in (((1,), (2,)), ((-1,), (-2,)))


def test_valuation():
    assert il.vp(75, 5) == 2
    assert il.vp(7, 5) == 0
