from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgdescent.linalg import (NoSolution, coords_in_span, frac, identity,
                              intersect_spans, kernel_basis, mat_vec, rank,
                              solve_affine, span_basis, span_contains,
                              sparse_from_dense, sparse_kernel,
                              sparse_solve_affine, transpose)

F = Fraction


def M(rows):
    return [[F(x) for x in row] for row in rows]


def V(xs):
    return [F(x) for x in xs]


def test_solve_identity():
    x0, ker = solve_affine(identity(2), V([1, 2]))
    assert x0 == V([1, 2])
    assert ker == []


def test_solve_inconsistent_with_certificate():
    res = solve_affine(M([[0]]), V([1]))
    assert isinstance(res, NoSolution)
    y = res.certificate
    assert mat_vec(transpose(M([[0]])), y) == V([0])
    assert sum(a * b for a, b in zip(y, V([1]))) != 0


def test_solve_underdetermined():
    # two equations, three unknowns, one-dimensional kernel
    A = M([[1, 1, 0], [0, 1, 1]])
    b = V([1, 1])
    x0, ker = solve_affine(A, b)
    assert mat_vec(A, x0) == b
    assert len(ker) == 1
    assert mat_vec(A, ker[0]) == V([0, 0])


def test_certificate_for_taller_system():
    A = M([[1, 0], [0, 1], [1, 1]])
    b = V([1, 1, 3])
    res = solve_affine(A, b)
    assert isinstance(res, NoSolution)
    y = res.certificate
    assert mat_vec(transpose(A), y) == V([0, 0])
    assert sum(a * c for a, c in zip(y, b)) != 0


def test_kernel_and_rank():
    A = M([[1, 2, 3], [2, 4, 6]])
    assert rank(A) == 1
    ker = kernel_basis(A)
    assert len(ker) == 2
    for v in ker:
        assert mat_vec(A, v) == V([0, 0])


def test_span_membership_and_intersection():
    b1 = [V([1, 0, 0]), V([0, 1, 0])]
    b2 = [V([0, 1, 0]), V([0, 0, 1])]
    inter = intersect_spans(b1, b2)
    assert len(inter) == 1
    assert span_contains(inter, V([0, 5, 0]))
    assert coords_in_span(b1, V([2, 3, 0])) == V([2, 3])
    assert coords_in_span(b1, V([0, 0, 1])) is None


def test_frac_parsing():
    assert frac("3/4") == F(3, 4)
    assert frac(-2) == F(-2)
    with pytest.raises(TypeError):
        frac(0.5)


small_entries = st.integers(min_value=-5, max_value=5)


@st.composite
def matrix_and_vector(draw):
    m = draw(st.integers(min_value=1, max_value=4))
    n = draw(st.integers(min_value=1, max_value=4))
    A = [[F(draw(small_entries)) for _ in range(n)] for _ in range(m)]
    x = [F(draw(small_entries)) for _ in range(n)]
    return A, x


@given(matrix_and_vector())
@settings(max_examples=60, deadline=None)
def test_solutions_verify_by_substitution(Ax):
    # build b from a known solution so the system is consistent,
    # then check the solver's outputs by direct substitution
    A, x = Ax
    b = mat_vec(A, x)
    res = solve_affine(A, b)
    assert not isinstance(res, NoSolution)
    x0, ker = res
    assert mat_vec(A, x0) == b
    for k in ker:
        assert mat_vec(A, k) == [F(0)] * len(A)
    # kernel dimension from the rank-nullity count
    assert len(ker) == len(A[0]) - rank(A)


@given(matrix_and_vector())
@settings(max_examples=40, deadline=None)
def test_sparse_matches_dense(Ax):
    A, x = Ax
    b = mat_vec(A, x)
    dense = solve_affine(A, b)
    sparse = sparse_solve_affine(sparse_from_dense(A), b, len(A[0]))
    assert not isinstance(sparse, NoSolution)
    x0, ker = sparse
    xv = [x0.get(j, F(0)) for j in range(len(A[0]))]
    assert mat_vec(A, xv) == b
    assert len(ker) == len(dense[1])
    dker = sparse_kernel(sparse_from_dense(A), len(A[0]))
    assert len(dker) == len(dense[1])


def test_sparse_inconsistent():
    res = sparse_solve_affine([{0: F(0)} if False else {}], V([1]), 1)
    assert isinstance(res, NoSolution)


def test_span_basis_echelonizes():
    basis = span_basis([V([2, 4]), V([1, 2]), V([0, 1])])
    assert len(basis) == 2
