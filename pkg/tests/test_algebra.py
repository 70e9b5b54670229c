import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from omegafam import algebra as alg
from omegafam import semigroup as sg
from omegafam.exact_linalg import exact_array, is_zero, normalize, zeros

CATALOGUE = [alg.field_k(), alg.zero_algebra(2), alg.left_unit_algebra(), alg.truncated_poly(3),
             alg.nilpotent_poly(3), alg.diagonal(2), alg.upper_triangular()]


def brute_mul(mu, x, y):
    d = mu.shape[0]
    return [sum(x[i] * y[j] * mu[i, j, k] for i in range(d) for j in range(d)) for k in range(d)]


def brute_assoc(mu):
    d = mu.shape[0]
    basis = [[int(i == j) for j in range(d)] for i in range(d)]
    for x, y, z in itertools.product(basis, repeat=3):
        if brute_mul(mu, brute_mul(mu, x, y), z) != brute_mul(mu, x, brute_mul(mu, y, z)):
            return False
    return True


def cube(d, lo=-1, hi=1):
    return st.lists(st.integers(lo, hi), min_size=d ** 3, max_size=d ** 3).map(
        lambda v: exact_array(np.reshape(v, (d, d, d))))


@pytest.mark.parametrize("a", CATALOGUE)
def test_catalogue_is_associative(a):
    assert alg.validate_algebra(a).ok
    assert brute_assoc(a.mult)


def test_left_unit_algebra_products():
    a = alg.left_unit_algebra()
    e1, e2 = exact_array([1, 0]), exact_array([0, 1])
    assert list(alg.mul(a, e1, e2)) == [0, 1]
    assert list(alg.mul(a, e2, e1)) == [0, 0]


@given(st.integers(1, 2).flatmap(cube))
def test_associativity_matches_brute_force(mu):
    assert alg.validate_algebra(alg.Algebra(mu)).ok == brute_assoc(mu)


def test_failed_associativity_witness():
    mu = zeros((2, 2, 2))
    mu[0, 0, 1] = 1
    mu[1, 0, 0] = 1
    rep = alg.validate_algebra(alg.Algebra(mu))
    assert not rep.ok
    w = rep.witness
    d = 2
    e = [[int(i == j) for j in range(d)] for i in range(d)]
    lhs = brute_mul(mu, brute_mul(mu, e[w["a"]], e[w["b"]]), e[w["c"]])
    rhs = brute_mul(mu, e[w["a"]], brute_mul(mu, e[w["b"]], e[w["c"]]))
    assert lhs[w["coord"]] != rhs[w["coord"]]


def test_bad_unit_reported():
    rep = alg.validate_algebra(alg.algebra([[[1]]], unit=[2]))
    assert not rep.ok and rep.check == "algebra"


@pytest.mark.parametrize("a", CATALOGUE)
def test_adjoint_and_coadjoint_bimodules(a):
    assert alg.validate_bimodule(a, alg.adjoint_bimodule(a)).ok
    assert alg.validate_bimodule(a, alg.coadjoint_bimodule(a)).ok
    assert alg.validate_bimodule(a, alg.zero_bimodule(a, 3)).ok


def test_coadjoint_matches_transpose_oracle():
    a = alg.left_unit_algebra()
    m = alg.coadjoint_bimodule(a)
    d = a.dim
    # (e_i . f_j)(e_k) = f_j(e_k e_i), (f_j . e_i)(e_k) = f_j(e_i e_k)
    for i, j, k in itertools.product(range(d), repeat=3):
        assert m.left[i, j, k] == a.mult[k, i, j]
        assert m.right[j, i, k] == a.mult[i, k, j]


@pytest.mark.parametrize("a", CATALOGUE)
def test_multiplication_is_a_cocycle(a):
    m = alg.adjoint_bimodule(a)
    assert alg.validate_2cocycle(alg.multiplication_cocycle(a), a, m).ok
    assert alg.validate_2cocycle(alg.multiplication_cocycle(a, Fraction(-1)), a, m).ok
    assert alg.validate_2cocycle(alg.zero_cocycle(a, m), a, m).ok


def _coboundary(a, m, f):
    """(delta f)(x, y) = x f(y) - f(xy) + f(x) y for f : A -> M, f[x, u]."""
    return (np.einsum("yl,xlk->xyk", f, m.left) - np.einsum("xyl,lk->xyk", a.mult, f)
            + np.einsum("xl,lyk->xyk", f, m.right))


@given(st.sampled_from(CATALOGUE[1:6]), st.data())
def test_coboundaries_are_cocycles_and_give_associative_extensions(a, data):
    m = alg.adjoint_bimodule(a)
    f = exact_array(np.reshape(data.draw(st.lists(st.integers(-2, 2), min_size=a.dim ** 2,
                                                  max_size=a.dim ** 2)), (a.dim, a.dim)))
    h = alg.Cocycle2(normalize(_coboundary(a, m, f)))
    assert alg.validate_2cocycle(h, a, m).ok
    assert alg.validate_algebra(alg.semidirect_product(a, m, h)).ok


@given(st.sampled_from(CATALOGUE[:6]), st.data())
def test_semidirect_associative_iff_cocycle(a, data):
    m = alg.adjoint_bimodule(a)
    d = a.dim
    h = alg.Cocycle2(exact_array(np.reshape(data.draw(st.lists(st.integers(-1, 1), min_size=d ** 3,
                                                              max_size=d ** 3)), (d, d, d))))
    is_cocycle = alg.validate_2cocycle(h, a, m).ok
    raw = zeros((2 * d, 2 * d, 2 * d))
    raw[:d, :d, :d] = a.mult
    raw[:d, :d, d:] = h.h
    raw[:d, d:, d:] = m.left
    raw[d:, :d, d:] = m.right
    assert brute_assoc(raw) == is_cocycle
    if not is_cocycle:
        with pytest.raises(alg.InvalidStructure):
            alg.semidirect_product(a, m, h)


def test_semidirect_with_multiplication_cocycle_on_k():
    k = alg.field_k()
    sd = alg.semidirect_product(k, alg.adjoint_bimodule(k), alg.multiplication_cocycle(k))
    # (x, u)(y, v) = (xy, xv + uy + xy)
    x, u, y, v = 2, 3, 5, 7
    assert list(alg.mul(sd, exact_array([x, u]), exact_array([y, v]))) == [x * y, x * v + u * y + x * y]


def test_semidirect_without_cocycle_is_plain():
    a = alg.left_unit_algebra()
    m = alg.adjoint_bimodule(a)
    sd = alg.semidirect_product(a, m)
    assert is_zero(sd.mult[:2, :2, 2:])
    assert alg.validate_algebra(sd).ok
    z = alg.semidirect_product(alg.zero_algebra(1), alg.zero_bimodule(alg.zero_algebra(1), 2))
    assert z.dim == 3 and is_zero(z.mult)


def test_extend_by_semigroup():
    k = alg.field_k()
    ext, mext = alg.extend_by_semigroup(k, alg.adjoint_bimodule(k), sg.left_zero(2))
    assert ext.dim == 2
    for al, be in itertools.product(range(2), repeat=2):
        out = [0, 0]
        out[al] = 1
        assert list(ext.mult[al, be]) == out
    assert alg.validate_algebra(ext).ok and alg.validate_bimodule(ext, mext).ok
    same, _ = alg.extend_by_semigroup(alg.truncated_poly(2), None, sg.trivial())
    assert is_zero(same.mult - alg.truncated_poly(2).mult)


@pytest.mark.parametrize("s", [sg.trivial(), sg.left_zero(2), sg.mult_mod2(), sg.cyclic_group(3)])
def test_cocycle_extension(s):
    a = alg.truncated_poly(2)
    m = alg.adjoint_bimodule(a)
    h = alg.multiplication_cocycle(a)
    ext, mext = alg.extend_by_semigroup(a, m, s)
    hext = alg.cocycle_extension(h, s)
    assert alg.validate_2cocycle(hext, ext, mext).ok
    d = a.dim
    for al, be in itertools.product(s.elements(), repeat=2):
        g = s.product(al, be)
        assert is_zero(hext.h[al * d:(al + 1) * d, be * d:(be + 1) * d, g * d:(g + 1) * d] - h.h)


def test_json_round_trip():
    a = alg.upper_triangular()
    back = alg.algebra_from_json(alg.algebra_to_json(a))
    assert is_zero(back.mult - a.mult) and list(back.unit) == list(a.unit)
    m = alg.coadjoint_bimodule(a)
    mb = alg.bimodule_from_json(alg.bimodule_to_json(m))
    assert is_zero(mb.left - m.left) and is_zero(mb.right - m.right)
