import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deltamod.exactmat import (DimensionError, ElementaryOp, ExactMatrix, PreconditionError, adjugate,
                               det_bareiss, det_cofactor, full_row_rank_projection, hnf, is_hnf,
                               nullspace_vector, rank, solve_rational, unimodular_completion)


def matrices(max_rows=5, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def square_matrices(max_n=5, lo=-9, hi=9):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n))


def test_bareiss_matches_cofactor_on_100_random_matrices():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(rows) == det_cofactor(rows)


@pytest.mark.parametrize("rows, value", [
    ([[5]], 5),
    ([[1, 2], [3, 4]], -2),
    ([[0, 1], [1, 0]], -1),
    ([[2, 0, 0], [0, 3, 0], [0, 0, 4]], 24),
    ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], 0),
])
def test_determinant_small_cases(rows, value):
    assert det_bareiss(rows) == value
    assert det_cofactor(rows) == value


def test_determinant_needs_square():
    with pytest.raises(DimensionError):
        det_bareiss([[1, 2]])


def test_big_integer_determinant_is_exact():
    big = 10**30
    rows = [[big, 1], [1, big]]
    assert det_bareiss(rows) == big * big - 1


@given(square_matrices())
@settings(max_examples=150, deadline=None)
def test_adjugate_identity(rows):
    M = ExactMatrix(rows)
    d = det_bareiss(M)
    n = M.rows
    assert M @ adjugate(M) == ExactMatrix([[d * int(i == j) for j in range(n)] for i in range(n)])


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_hnf_is_canonical_and_unimodular(rows):
    M = ExactMatrix(rows)
    form = hnf(M)
    assert is_hnf(form.H)
    assert form.U @ M == form.H
    assert abs(det_bareiss(form.U)) == 1
    assert form.rank == rank(M)


@given(matrices(max_rows=4, max_cols=4, lo=-4, hi=4), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_hnf_invariant_under_row_operations(rows, seed):
    rng = random.Random(seed)
    M = ExactMatrix(rows)
    mixed = M
    for _ in range(5):
        op = rng.choice(["swap", "negate", "add"])
        i = rng.randrange(M.rows)
        j = rng.randrange(M.rows)
        if op == "add" and i == j:
            continue
        mixed = ElementaryOp(op, i, j, rng.randint(-3, 3)).apply(mixed)
    assert hnf(mixed).H == hnf(M).H


def test_hnf_example():
    form = hnf([[2, 4], [1, 3]])
    assert form.H == ExactMatrix([[1, 1], [0, 2]])
    assert form.diagonal == (2,)


def test_elementary_op_inverse_and_matrix():
    op = ElementaryOp("add", 0, 2, 5)
    M = ExactMatrix([[1, 2], [3, 4], [5, 6]])
    assert op.inverse().apply(op.apply(M)) == M
    assert op.as_matrix(3) @ M == op.apply(M)
    with pytest.raises(ValueError):
        ElementaryOp("add", 1, 1, 2)
    with pytest.raises(ValueError):
        ElementaryOp("scale", 0)


@pytest.mark.parametrize("v", [(2, 3), (1, 1, 1), (0, 0, 1), (-3, 5, 7), (6, 10, 15), (1,)])
def test_unimodular_completion_sends_vector_to_e1(v):
    U = unimodular_completion(v)
    assert abs(det_bareiss(U)) == 1
    assert U @ v == tuple(int(i == 0) for i in range(len(v)))


def test_unimodular_completion_known_value():
    assert unimodular_completion((2, 3)) == ExactMatrix([[-1, 1], [-3, 2]])


def test_unimodular_completion_rejects_non_primitive():
    with pytest.raises(PreconditionError):
        unimodular_completion((2, 4))


def test_solve_rational_exact():
    x = solve_rational([[2, 1], [1, 3]], [1, 2])
    assert x == (Fraction(1, 5), Fraction(3, 5))
    with pytest.raises(PreconditionError):
        solve_rational([[1, 2], [2, 4]], [1, 1])


def test_nullspace_vector():
    v = nullspace_vector([(1, 0), (0, 1), (1, 1)])
    assert v is not None
    assert all(sum(c * x for c, x in zip(v, col)) == 0 for col in ((1, 0, 1), (0, 1, 1)))
    assert nullspace_vector([(1, 0), (0, 1)]) is None
    assert nullspace_vector([(1,), (2,), (3,)]) is None  # kernel of dimension two


def test_full_row_rank_projection():
    M = ExactMatrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    Mbar, U = full_row_rank_projection(M)
    assert Mbar.rows == 2
    full = U @ M
    assert full.select_rows(range(2)) == Mbar
    assert all(x == 0 for x in full.row(2))


def test_matrix_basics():
    M = ExactMatrix.from_columns([(1, 2), (3, 4), (5, 6)])
    assert M.shape == (2, 3)
    assert M.T.shape == (3, 2)
    assert M.column(1) == (3, 4)
    assert M.select_columns([2, 0]).columns() == [(5, 6), (1, 2)]
    assert M.append_columns([(7, 8)]).cols == 4
    assert hash(M) == hash(ExactMatrix([[1, 3, 5], [2, 4, 6]]))
    assert ExactMatrix.from_columns([], nrows=3).shape == (3, 0)
    with pytest.raises(DimensionError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(TypeError):
        ExactMatrix([[1.5]])
