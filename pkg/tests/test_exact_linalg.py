from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from omegafam.exact_linalg import (ShapeError, SingularMatrixError, assemble_linear_map, exact_array,
                                   identity, inverse, is_zero, kernel_basis, normalize, rank, rref,
                                   scalar, to_jsonable, zeros)


def small_matrices(max_rows=5, max_cols=5, lo=-3, hi=3):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_scalar_coercion():
    assert scalar("3/6") == Fraction(1, 2)
    assert scalar(" 4/2 ") == 2 and isinstance(scalar("4/2"), int)
    assert scalar(Fraction(6, 3)) == 2 and isinstance(scalar(Fraction(6, 3)), int)
    assert scalar(True) == 1
    with pytest.raises(TypeError):
        scalar(0.5)
    with pytest.raises(ValueError):
        scalar("one half")


def test_exact_array_shape_check():
    a = exact_array([["1/2", 1], [0, "-3"]], (2, 2))
    assert a[0, 0] == Fraction(1, 2) and a[1, 1] == -3
    with pytest.raises(ShapeError):
        exact_array([[1, 2]], (2, 2))


def test_rank_examples():
    assert rank(identity(2)) == 2
    assert rank(zeros((3, 3))) == 0
    assert rank(exact_array([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(identity(2)) == []
    assert len(kernel_basis(zeros((2, 3)))) == 3
    (v,) = kernel_basis(exact_array([[1, 2], [2, 4]]))
    # proportional to (2, -1)
    assert v[0] * -1 == v[1] * 2 and v[0] != 0


def test_assemble_examples():
    swap = assemble_linear_map([exact_array([0, 1]), exact_array([1, 0])])
    assert swap.tolist() == [[0, 1], [1, 0]]
    assert is_zero(assemble_linear_map([zeros(2), zeros(2)]))
    m = assemble_linear_map([exact_array([1, 0]), exact_array([1, 1])])
    assert m.tolist() == [[1, 1], [0, 1]]
    with pytest.raises(ShapeError):
        assemble_linear_map([zeros(2), zeros(3)])


@given(small_matrices())
def test_rank_matches_float_oracle(rows):
    # small integer entries: floating point rank is reliable here
    m = exact_array(rows)
    assert rank(m) == np.linalg.matrix_rank(np.array(rows, dtype=float))


@given(small_matrices())
def test_rank_matches_rref_pivots(rows):
    m = exact_array(rows)
    red, pivots = rref(m)
    assert rank(m) == len(pivots)
    for i, c in enumerate(pivots):
        assert red[i, c] == 1
        assert all(red[j, c] == 0 for j in range(red.shape[0]) if j != i)


@given(small_matrices())
def test_kernel_is_kernel(rows):
    m = exact_array(rows)
    basis = kernel_basis(m)
    assert len(basis) == m.shape[1] - rank(m)
    for v in basis:
        assert is_zero(normalize(m @ v))
    if basis:
        assert rank(np.stack(basis)) == len(basis)


@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse(rows):
    m = exact_array(rows)
    n = m.shape[0]
    if rank(m) < n:
        with pytest.raises(SingularMatrixError):
            inverse(m)
        return
    inv = inverse(m)
    assert is_zero(normalize(m @ inv) - identity(n))
    assert is_zero(normalize(inv @ m) - identity(n))


def test_rank_with_fractions():
    m = exact_array([["1/2", "1/3"], ["3/2", 1]])
    assert rank(m) == 1
    assert rank(exact_array([["1/2", "1/3"], ["3/2", 2]])) == 2


def test_to_jsonable_strings():
    assert to_jsonable(exact_array([[1, "1/2"]])) == [["1", "1/2"]]
