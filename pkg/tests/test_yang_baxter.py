import itertools
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import given, strategies as st

from omegafam import algebra as alg
from omegafam import semigroup as sg
from omegafam import families as fm
from omegafam import yang_baxter as yb
from omegafam.exact_linalg import is_zero, zeros

ALGEBRAS = [alg.field_k(), alg.zero_algebra(2), alg.left_unit_algebra(), alg.truncated_poly(2),
            alg.nilpotent_poly(2), alg.diagonal(2)]


# dictionary-of-pure-tensors oracle over the unitalization, built without einsum

def plus_table(a):
    d = a.dim
    if a.unit is not None:
        u = {i: a.unit[i] for i in range(d) if a.unit[i] != 0}
        return d, u, lambda i, j: {k: a.mult[i, j, k] for k in range(d) if a.mult[i, j, k] != 0}

    def prod(i, j):
        if i == d:
            return {j: 1}
        if j == d:
            return {i: 1}
        return {k: a.mult[i, j, k] for k in range(d) if a.mult[i, j, k] != 0}
    return d + 1, {d: 1}, prod


def leg(r, unit, where):
    out = defaultdict(int)
    for (i, j), c in np.ndenumerate(r):
        if c == 0:
            continue
        for u, cu in unit.items():
            idx = {"12": (i, j, u), "13": (i, u, j), "23": (u, i, j)}[where]
            out[idx] += c * cu
    return out


def tmul(X, Y, prod):
    out = defaultdict(int)
    for (a1, b1, c1), x in X.items():
        for (a2, b2, c2), y in Y.items():
            for (p, cp), (q, cq), (w, cw) in itertools.product(prod(a1, a2).items(), prod(b1, b2).items(),
                                                               prod(c1, c2).items()):
                out[(p, q, w)] += x * y * cp * cq * cw
    return out


def combine(*terms):
    out = defaultdict(int)
    for sign, t in terms:
        for k, v in t.items():
            out[k] += sign * v
    return all(v == 0 for v in out.values())


def oracle(rf, a, kind):
    _, unit, prod = plus_table(a)
    s = rf.semigroup
    L = {al: {w: leg(rf.r[al], unit, w) for w in ("12", "13", "23")} for al in s.elements()}
    for al, be in itertools.product(s.elements(), repeat=2):
        g = s.product(al, be)
        if kind == 1:
            ok = combine((1, tmul(L[g]["13"], L[al]["12"], prod)), (-1, tmul(L[al]["12"], L[be]["23"], prod)),
                         (1, tmul(L[be]["23"], L[g]["13"], prod)))
        else:
            ok = combine((1, tmul(L[al]["13"], L[be]["12"], prod)), (-1, tmul(L[g]["12"], L[al]["23"], prod)),
                         (1, tmul(L[be]["23"], L[g]["13"], prod)))
        if not ok:
            return False
    return True


def rand_tensor(data, s, d, skew=False):
    vals = data.draw(st.lists(st.integers(-1, 1), min_size=s.size * d * d, max_size=s.size * d * d))
    r = np.reshape(vals, (s.size, d, d))
    if skew:
        r = r - np.transpose(r, (0, 2, 1))
    return yb.tensor_family(s, r)


@given(st.sampled_from(ALGEBRAS), st.sampled_from([sg.trivial(), sg.left_zero(2), sg.mult_mod2()]), st.data())
def test_checks_match_pure_tensor_oracle(a, s, data):
    rf = rand_tensor(data, s, a.dim)
    assert yb.check_aybf_type1(rf, a).ok == oracle(rf, a, 1)
    assert yb.check_aybf_type2(rf, a).ok == oracle(rf, a, 2)


@given(st.sampled_from(ALGEBRAS), st.data())
def test_constant_family_equivalences(a, data):
    rf = rand_tensor(data, sg.trivial(), a.dim)
    t1 = yb.check_aybf_type1(rf, a).ok
    assert t1 == yb.check_aybf_type2(rf, a).ok == yb.check_aybe(rf.r[0], a).ok


@given(st.sampled_from(ALGEBRAS), st.sampled_from([sg.trivial(), sg.left_zero(2), sg.mult_mod2()]), st.data())
def test_type1_solutions_induce_rb_families(a, s, data):
    rf = rand_tensor(data, s, a.dim)
    if yb.check_aybf_type1(rf, a).ok:
        R = yb.rb_family_from_aybf1(rf, a)
        assert fm.check_rota_baxter_family(R, a).ok
    else:
        with pytest.raises(fm.InvalidFamily):
            yb.rb_family_from_aybf1(rf, a)


@given(st.sampled_from(ALGEBRAS), st.sampled_from([sg.trivial(), sg.left_zero(2), sg.mult_mod2()]), st.data())
def test_skew_type2_solutions_induce_o_families(a, s, data):
    rf = rand_tensor(data, s, a.dim, skew=True)
    assert yb.is_skew_symmetric(rf)
    if yb.check_aybf_type2(rf, a).ok:
        T = yb.o_family_from_aybf2(rf, a)
        assert fm.check_twisted_o_family(T, a, alg.coadjoint_bimodule(a)).ok


def test_zero_family():
    for a in ALGEBRAS:
        z = yb.tensor_family(sg.left_zero(2), zeros((2, a.dim, a.dim)))
        assert yb.check_aybf_type1(z, a).ok and yb.check_aybf_type2(z, a).ok
        assert yb.is_skew_symmetric(z)
        assert is_zero(yb.rb_family_from_aybf1(z, a).maps)
        assert is_zero(yb.o_family_from_aybf2(z, a).maps)


def test_skew_symmetry_examples():
    assert yb.is_skew_symmetric(yb.tensor_family(sg.trivial(), [[[0, 1], [-1, 0]]]))
    assert not yb.is_skew_symmetric(yb.tensor_family(sg.trivial(), [[[1, 0], [0, 0]]]))
    with pytest.raises(fm.InvalidFamily, match="skew"):
        yb.o_family_from_aybf2(yb.tensor_family(sg.trivial(), [[[1, 0], [0, 0]]]), alg.diagonal(2))


def test_rb_from_aybe_on_nilpotent_algebra():
    # r = x (x) x on span{x, x^2}: every leg product lands in degree >= 2 in each slot pair
    a = alg.nilpotent_poly(2)
    rf = yb.tensor_family(sg.trivial(), [[[1, 0], [0, 0]]])
    assert yb.check_aybe(rf.r[0], a).ok == oracle(rf, a, 1)
    if yb.check_aybe(rf.r[0], a).ok:
        R = yb.rb_family_from_aybf1(rf, a)
        # R(x) = x x x = 0 in span{x, x^2}
        assert is_zero(R.maps)


def test_shape_mismatch():
    from omegafam.exact_linalg import ShapeError
    with pytest.raises(ShapeError):
        yb.check_aybf_type1(yb.tensor_family(sg.trivial(), [[[0]]]), alg.diagonal(2))
    with pytest.raises(ShapeError):
        yb.tensor_family(sg.left_zero(2), [[[0]]])


def test_json_keys():
    rf = yb.tensor_family(sg.left_zero(2), {"0": [[0, 1], [-1, 0]], "1": [[0, 0], [0, 0]]})
    assert yb.tensor_family_to_json(rf)["r"]["0"] == [["0", "1"], ["-1", "0"]]
