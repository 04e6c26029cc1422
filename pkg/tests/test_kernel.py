from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from operadform.kernel import (Permutation, SparseMatrix, fmt_rational, nullspace_basis, parse_rational,
                               quotient_basis, rank, solve_affine)


def test_rank_examples():
    assert rank(SparseMatrix.from_dense([[1, 0], [0, 1]])) == 2
    assert rank(SparseMatrix(3, 5)) == 0
    assert rank(SparseMatrix.from_dense([[1, 2], [2, 4]])) == 1


def test_nullspace_examples():
    assert nullspace_basis(SparseMatrix.from_dense([[1, 0], [0, 1]])) == []
    assert len(nullspace_basis(SparseMatrix(1, 3))) == 3
    (v,) = nullspace_basis(SparseMatrix.from_dense([[1, 1]]))
    # proportional to (1, -1)
    assert v.get(0, 0) == -v.get(1, 0) != 0


def test_quotient_basis_examples():
    reps, red = quotient_basis(2, [])
    assert len(reps) == 2 and red({0: 3}) == {0: 3}
    reps, red = quotient_basis(2, [{0: 1, 1: 1}])
    assert len(reps) == 1
    reps, red = quotient_basis(3, [{0: 1}, {1: 1}, {2: 1}])
    assert reps == []


def test_sparse_matrix_drops_zeros():
    m = SparseMatrix(2, 2)
    m[0, 1] = 5
    m[0, 1] = 0
    assert m.nnz() == 0
    with pytest.raises(IndexError):
        m[2, 0] = 1


matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_nullity(data):
    m = SparseMatrix.from_dense(data)
    ker = nullspace_basis(m)
    assert rank(m) + len(ker) == m.ncols
    for v in ker:
        assert m.apply(v) == {}


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_quotient_reduction_idempotent(data):
    ncols = len(data[0])
    rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in data]
    reps, red = quotient_basis(ncols, rows)
    assert len(reps) == ncols - rank(rows)
    for j in range(ncols):
        once = red({j: Fraction(1)})
        assert red(once) == once
        assert set(once) <= set(reps)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(max_denominator=10**6), min_size=1, max_size=5))
def test_exact_arithmetic_keeps_denominators(xs):
    # a 1 x k system sum x_j y_j = 1 is solvable exactly with no rounding
    cols = [{0: x} for x in xs]
    sol = solve_affine(cols, {0: Fraction(1)})
    if any(xs):
        assert sum(a * b for a, b in zip(sol, xs)) == 1
        assert all(isinstance(a, Fraction) for a in sol)
    else:
        assert sol is None


def test_solve_affine_free_variables_zero():
    sol = solve_affine([{0: 1}, {0: 1}, {1: 2}], {0: Fraction(3), 1: Fraction(4)})
    assert sol[0] + sol[1] == 3 and sol[2] == 2
    assert 0 in sol[:2]


def test_rational_strings():
    assert fmt_rational(Fraction(3, 1)) == "3"
    assert fmt_rational(Fraction(-1, 24)) == "-1/24"
    assert parse_rational("-1/24") == Fraction(-1, 24)
    assert parse_rational("7") == 7


@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_permutation_group_laws(a, b):
    p, q = Permutation(a), Permutation(b)
    assert p.compose(p.inverse()).is_identity()
    assert p.compose(q)(1) == p(q(1))
    assert (p * q).inverse() == q.inverse() * p.inverse()


def test_permutation_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])
