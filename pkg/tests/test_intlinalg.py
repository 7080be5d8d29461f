"""Exact integer linear algebra against independent references."""
import random

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from krontoric.intlinalg import (content, int_rank, invariant_factors,
                                 kernel_basis, primitive,
                                 rational_det, rational_matrix_inverse,
                                 saturated_span_basis, smith_normal_form,
                                 solve_rational)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def _is_unimodular(m):
    return abs(rational_det(m)) == 1


small_matrices = st.integers(1, 4).flatmap(
    lambda rows: st.integers(1, 4).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows, max_size=rows)))


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_snf_properties(mat):
    u, d, v = smith_normal_form(mat)
    assert _matmul(_matmul(u, mat), v) == d
    assert _is_unimodular(u) and _is_unimodular(v)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for a, b in zip(diag, diag[1:]):
        if a and b:
            assert b % a == 0
        if a == 0:
            assert b == 0
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0


def test_invariant_factors_reference():
    # the standard 2x2 example with a nontrivial factor
    assert invariant_factors([[2, 4], [6, 8]]) == [2, 4]
    assert invariant_factors([[1, 0], [0, 1]]) == [1, 1]


@settings(max_examples=40, deadline=None)
@given(small_matrices)
def test_kernel_basis_annihilates(mat):
    for k in kernel_basis(mat):
        assert all(sum(r[c] * k[c] for c in range(len(k))) == 0 for r in mat)
    # rank-nullity
    assert len(kernel_basis(mat)) == len(mat[0]) - int_rank(mat)


def test_kernel_is_saturated():
    assert kernel_basis([[2, 0]]) == [(0, 1)]
    ker = kernel_basis([[2, -2]])
    assert len(ker) == 1 and primitive(ker[0]) in ((1, 1), (-1, -1))


def test_saturated_span_basis():
    basis = saturated_span_basis([(2, 0), (0, 2)])
    assert sorted(primitive(b) for b in basis) == [(0, 1), (1, 0)]
    basis = saturated_span_basis([(2, 2)])
    assert len(basis) == 1 and primitive(basis[0]) in ((1, 1), (-1, -1))


def test_solve_rational():
    x = solve_rational([(2, 0), (1, 1)], (4, 3))
    assert x == [Fraction(1, 2), Fraction(3)]
    assert solve_rational([(1, 0)], (0, 1)) is None


def test_rational_inverse_and_det():
    m = [[1, 2], [3, 4]]
    inv = rational_matrix_inverse(m)
    ident = _matmul(m, inv)
    assert ident == [[1, 0], [0, 1]]
    assert rational_det(m) == -2
    assert rational_matrix_inverse([[1, 1], [1, 1]]) is None


def test_content_and_rank():
    assert content((4, -6, 8)) == 2
    assert int_rank([[1, 2], [2, 4], [0, 1]]) == 2
