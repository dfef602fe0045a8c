"""Tests for the exact sparse linear algebra layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ymh.exact_linalg import (
    SparseMatrix,
    SubquotientError,
    kernel_basis,
    rank,
    rank_of_vectors,
    solve_in_span,
    subquotient_basis,
)


def dense(rows):
    """Build a SparseMatrix from a dense list of lists."""
    r = len(rows)
    c = len(rows[0]) if rows else 0
    return SparseMatrix(r, c, {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v})


def rank_by_fraction_gauss(rows):
    """Independent oracle: plain Gaussian elimination over Fraction lists."""
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    piv_row = 0
    for col in range(ncols):
        pivot = None
        for i in range(piv_row, len(mat)):
            if mat[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[piv_row], mat[pivot] = mat[pivot], mat[piv_row]
        pv = mat[piv_row][col]
        for i in range(len(mat)):
            if i != piv_row and mat[i][col]:
                f = mat[i][col] / pv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[piv_row])]
        piv_row += 1
        rank += 1
    return rank


def test_rank_empty_matrix():
    assert rank(SparseMatrix(0, 5)) == 0
    assert rank(SparseMatrix(5, 0)) == 0


def test_rank_identity():
    assert rank(SparseMatrix.identity(3)) == 3


def test_rank_dependent_rows():
    # second row is twice the first
    assert rank(dense([[1, 2, 3], [2, 4, 6]])) == 1


def test_kernel_identity_empty():
    assert kernel_basis(SparseMatrix.identity(3)) == []


def test_kernel_zero_matrix():
    vecs = kernel_basis(SparseMatrix(2, 4))
    assert len(vecs) == 4
    assert rank_of_vectors(vecs) == 4


def test_kernel_one_relation():
    m = dense([[1, 1]])
    (v,) = kernel_basis(m)
    # proportional to (1, -1)
    assert v[0] * (-1) == v[1]
    assert not m.apply(v)


def test_solve_in_span_unit():
    assert solve_in_span([{0: 1}], {0: 1}) == [Fraction(1)]
    assert solve_in_span([{0: 1}], {1: 1}) is None


def test_solve_in_span_two_dim():
    basis = [{0: 1, 1: 1}, {1: 1}]
    assert solve_in_span(basis, {0: 1}) == [Fraction(1), Fraction(-1)]


def test_subquotient_full_mod_line():
    lifts, reduce = subquotient_basis(2, [{0: 1}, {1: 1}], [{0: 1}])
    assert len(lifts) == 1
    assert lifts[0] == {1: Fraction(1)}
    assert reduce({1: Fraction(3)}) == {0: Fraction(3)}
    assert reduce({0: Fraction(5)}) == {}


def test_subquotient_zero_dimensional():
    lifts, _ = subquotient_basis(2, [{0: 1, 1: 2}], [{0: 2, 1: 4}])
    assert lifts == []


def test_subquotient_rank_nullity():
    sub = [{0: 1}, {1: 1}, {2: 1}]
    quot = [{0: 1, 1: 1}]
    lifts, reduce = subquotient_basis(3, sub, quot)
    assert len(lifts) == 2
    # the class of e1 equals minus the class of e0 modulo the quotient
    r0 = reduce({0: 1})
    r1 = reduce({1: 1})
    assert {k: -v for k, v in r0.items()} == r1


def test_subquotient_containment_violation():
    with pytest.raises(SubquotientError):
        subquotient_basis(2, [{0: 1}], [{1: 1}])


def test_solve_reconstruction_exact():
    basis = [{0: Fraction(1, 3), 2: 5}, {0: 2, 1: 7}, {2: 1}]
    coeffs = [Fraction(2, 7), Fraction(-3), Fraction(1, 2)]
    target = {}
    for c, vec in zip(coeffs, basis):
        for k, v in vec.items():
            target[k] = target.get(k, Fraction(0)) + c * Fraction(v)
    got = solve_in_span(basis, {k: v for k, v in target.items() if v})
    assert got == coeffs


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 6),
    st.integers(2, 6),
    st.data(),
)
def test_rank_matches_fraction_gauss_and_nullity(nr, nc, data):
    rows = [
        [data.draw(st.integers(-4, 4)) for _ in range(nc)]
        for _ in range(nr)
    ]
    m = dense(rows)
    r = rank(m)
    assert r == rank_by_fraction_gauss(rows)
    assert r <= min(nr, nc)
    ker = kernel_basis(m)
    assert r + len(ker) == nc
    for v in ker:
        assert not m.apply(v)
    assert rank(m.transpose()) == r


def test_matmul_and_apply_agree():
    a = dense([[1, 2], [0, 3]])
    b = dense([[5], [7]])
    assert (a @ b).entries == {(0, 0): Fraction(19), (1, 0): Fraction(21)}
    assert a.apply({0: 5, 1: 7}) == {0: Fraction(19), 1: Fraction(21)}
