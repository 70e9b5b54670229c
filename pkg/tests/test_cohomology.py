from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from omegafam import algebra as alg
from omegafam import cohomology as co
from omegafam import family_algebras as fa
from omegafam import families as fm
from omegafam import semigroup as sg
from omegafam.exact_linalg import identity, is_zero, normalize, rank, zeros


def valid_twisted(corpus, max_dim=60):
    out = []
    for i in corpus:
        if not fm.check_twisted_o_family(i.family, i.algebra, i.bimodule, i.cocycle).ok:
            continue
        ctx = co.twisted_complex(i.family, i.algebra, i.bimodule, i.cocycle)
        if co.cochain_dim(ctx, 2) <= max_dim:
            out.append((i.name, ctx))
    return out


# index maps

def test_index_map_examples():
    assert co.index_maps(2, 1, 3, 1) == (1, (1,))
    assert co.index_maps(2, 1, 1, 1) == (1, (1,))
    for n in (2, 3):
        for i in range(2, n + 1):
            for r in range(1, i):
                R, S = co.index_maps(n, i, 2, r)
                assert R == r and S == (1, 2, 3)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_index_maps_land_in_the_right_label_sets(m, n, data):
    i = data.draw(st.integers(1, m))
    r = data.draw(st.integers(1, m + n - 1))
    R, S = co.index_maps(m, i, n, r)
    assert R in co.labels(m)
    assert set(S) <= set(co.labels(n))


def test_index_map_errors():
    with pytest.raises(ValueError):
        co.index_maps(2, 3, 2, 1)
    with pytest.raises(ValueError):
        co.index_maps(2, 1, 2, 4)


# dual route: the first twisted coboundary is the linearization of the family identity

def test_delta1_is_linearized_residual(corpus):
    ctxs = valid_twisted(corpus)
    assert len(ctxs) > 10
    for name, ctx in ctxs:
        t = ctx.family
        X = co.random_cochains(ctx, 1, 1, 7)[0].reshape(ctx.shape(1))
        pert = np.transpose(X, (0, 2, 1))

        def res(c):
            return fm.twisted_residual(fm.OperatorFamily(t.semigroup, normalize(t.maps + c * pert)),
                                       ctx.algebra, ctx.bimodule, ctx.cocycle)
        # five-point stencil: exact on the cubic polynomial c -> res(T + c X)
        lin = normalize((8 * (res(1) - res(-1)) - (res(2) - res(-2))) * Fraction(1, 12))
        assert is_zero(lin - co.delta_twooperf(X, ctx, 1)), name


def test_twisted_complex_equals_omega_hoch_of_induced_bimodule(corpus):
    for name, ctx in valid_twisted(corpus, max_dim=40):
        o, m = fa.omega_bimodule_from_twisted_family(ctx.family, ctx.algebra, ctx.bimodule, ctx.cocycle)
        hoch = co.omega_hoch_complex(o, m)
        for n in range(ctx.start, 3):
            X = co.random_cochains(ctx, n, 2, n)
            assert is_zero(co.apply_delta(ctx, X, n) - co.apply_delta(hoch, X, n)), (name, n)


# delta squared

def test_dsquared_twisted(corpus):
    for name, ctx in valid_twisted(corpus):
        for n in range(ctx.start, 2):
            assert co.verify_dsquared_zero(ctx, n, trials=2, seed=1), (name, n)


def test_dsquared_omega_hoch(corpus):
    for name, ctx in valid_twisted(corpus, max_dim=40):
        o, m = fa.omega_bimodule_from_twisted_family(ctx.family, ctx.algebra, ctx.bimodule, ctx.cocycle)
        hoch = co.omega_hoch_complex(o, m)
        assert co.verify_dsquared_zero(hoch, 1, trials=2, seed=2), name


def _ns_examples():
    k = alg.field_k()
    k2 = alg.truncated_poly(2)
    out = []
    for s in [sg.trivial(), sg.left_zero(2), sg.mult_mod2()]:
        out.append(fa.induce_ns_family("nijenhuis", fm.constant_family(s, 2 * identity(1)), k))
        out.append(fa.induce_ns_family("weighted_rb", fm.constant_family(s, -identity(2)), k2, 1))
    return out


def test_dsquared_ns():
    for f in _ns_examples():
        ctx = co.ns_complex(f)
        assert co.verify_dsquared_zero(ctx, 1, trials=2, seed=3)
        if f.dim == 1:
            assert co.verify_dsquared_zero(ctx, 2, trials=2, seed=3)


def test_dendriform_subcomplex_closed():
    lu = alg.left_unit_algebra()
    cm = alg.coadjoint_bimodule(lu)
    d = fa.dendriform_from_o_family(fm.constant_family(sg.mult_mod2(), np.array([[0, 1], [-1, 0]], dtype=object)),
                                    lu, cm)
    ctx = co.dendriform_complex(d)
    full = co.NSFamilyComplex(fa.as_ns_family(d))
    X = co.random_cochains(ctx, 2, 2, 5)
    comps = ctx.unflatten(X, 2)
    comps[3] = zeros((2,) + full.comp_shape(2, 3))
    out = full.delta_components(comps, 2)
    assert is_zero(out[4])
    assert co.verify_dsquared_zero(ctx, 1, trials=2, seed=4)
    c = {r: v[0] for r, v in ctx.unflatten(X, 2).items()}
    res = co.delta_dendfam(c, ctx, 2)
    assert set(res) == {1, 2, 3}


# zero cochains and zero structures

def test_zero_cochains_map_to_zero(corpus):
    for name, ctx in valid_twisted(corpus)[:5]:
        assert is_zero(co.delta_twooperf(zeros(ctx.shape(1)), ctx, 1))
    f = _ns_examples()[0]
    ctx = co.ns_complex(f)
    out = co.delta_nsfam({1: zeros(ctx.comp_shape(1, 1))}, ctx, 1)
    assert all(is_zero(v) for v in out.values())


def test_zero_context_on_k_has_full_cohomology():
    k = alg.field_k()
    ctx = co.twisted_complex(fm.zero_family(sg.trivial(), 1, 1), k, alg.adjoint_bimodule(k))
    table = co.cohomology_table(ctx, 3)
    assert [r["n"] for r in table] == [0, 1, 2, 3]
    assert all(r["dim_C"] == 1 and r["dim_H"] == 1 and r["rank_delta"] == 0 for r in table)
    assert is_zero(co.delta_twooperf(np.array([5], dtype=object), ctx, 0))


def test_zero_ns_family_full_cohomology():
    ctx = co.ns_complex(fa.zero_ns_family(sg.trivial(), 1))
    for row in co.cohomology_table(ctx, 3):
        assert row["dim_H"] == row["dim_C"]
    assert co.cohomology_dimensions(ctx, 2) == [(1, 1), (2, 3)]


def test_zero_omega_hoch_degree0():
    o = fa.OmegaAssocAlgebra(sg.trivial(), zeros((1, 1, 1, 1, 1)))
    m = fa.OmegaBimodule(zeros((1, 1, 1, 2, 2)), zeros((1, 1, 2, 1, 2)))
    ctx = co.omega_hoch_complex(o, m)
    assert is_zero(co.delta_omega_hoch(np.array([1, 2], dtype=object), ctx, 0))


def test_rank_nullity_rows(corpus):
    for name, ctx in valid_twisted(corpus, max_dim=30):
        table = co.cohomology_table(ctx, 2)
        for row in table:
            mat = co.delta_matrix(ctx, row["n"])
            assert row["rank_delta"] == rank(mat)
            assert row["dim_Z"] + row["rank_delta"] == row["dim_C"]
            assert row["dim_H"] == row["dim_Z"] - row["dim_B"] >= 0


def test_start_degree_depends_on_unit(corpus):
    for name, ctx in valid_twisted(corpus):
        assert ctx.start == (0 if ctx.semigroup.unit is not None else 1)


# errors

def test_complex_errors():
    k = alg.field_k()
    with pytest.raises(co.ComplexError):
        co.twisted_complex(fm.constant_family(sg.trivial(), identity(1)), k, alg.adjoint_bimodule(k))
    # (x * y) > z = 2xyz but x > (y > z) = xyz
    bad = fa.ns_family(sg.trivial(), [[[[1]]]], [[[[1]]]], [[[[[0]]]]])
    assert not fa.validate_ns_family(bad).ok
    with pytest.raises(co.ComplexError):
        co.ns_complex(bad)
    with pytest.raises(co.ComplexError, match="vee = 0"):
        co.dendriform_complex(_ns_examples()[0])
    o = fa.OmegaAssocAlgebra(sg.left_zero(2), zeros((2, 2, 1, 1, 1)))
    m = fa.OmegaBimodule(zeros((2, 2, 1, 1, 1)), zeros((2, 2, 1, 1, 1)))
    with pytest.raises(co.ComplexError, match="unital"):
        co.delta_omega_hoch(np.zeros(1, dtype=object), co.omega_hoch_complex(o, m), 0)
    k2 = alg.truncated_poly(2)
    big = co.twisted_complex(fm.zero_family(sg.trivial(), 2, 2), k2, alg.adjoint_bimodule(k2))
    with pytest.raises(co.ComplexError, match="resource bound"):
        co.cohomology_table(big, 3, limit=100)


def test_delta_dendfam_rejects_non_dendriform_input():
    ctx = co.ns_complex(_ns_examples()[0])
    with pytest.raises(co.ComplexError):
        co.delta_dendfam({1: zeros(ctx.comp_shape(1, 1))}, ctx, 1)


def test_pi_cochain():
    f = _ns_examples()[0]
    pi = co.pi_cochain(f)
    assert is_zero(pi[1] - f.prec) and is_zero(pi[3] - f.vee)
