"""Associative Yang-Baxter families and the operator families they induce.

r_alpha = sum_ij r[alpha][i, j] e_i (x) e_j.  The triple-tensor identities are
evaluated in the unitalization A+ when A has no unit, with elements of
(A+)^(x)3 held as dense dim^3 arrays.
"""

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .exact_linalg import ShapeError, exact_array, to_jsonable, zeros
from .families import InvalidFamily, OperatorFamily
from .report import from_residual


@dataclass(frozen=True, eq=False)
class TensorFamily:
    semigroup: object
    r: np.ndarray

    @property
    def algebra_dim(self):
        return self.r.shape[1]


def tensor_family(s, r):
    if isinstance(r, dict):
        r = [r[k] if k in r else r[str(k)] for k in range(s.size)]
    arr = exact_array(r)
    if arr.ndim != 3 or arr.shape[0] != s.size or arr.shape[1] != arr.shape[2]:
        raise ShapeError(f"need one square coefficient matrix per element, got {arr.shape}")
    return TensorFamily(s, arr)


def tensor_family_to_json(rf):
    return {"r": {str(a): to_jsonable(rf.r[a]) for a in rf.semigroup.elements()}}


def unitalization(a):
    """(mult, unit index, embedding) of A itself if unital, else of A + k."""
    if a.unit is not None:
        return a.mult, a.unit, a.dim
    d = a.dim
    mu = zeros((d + 1, d + 1, d + 1))
    mu[:d, :d, :d] = a.mult
    for i in range(d + 1):
        mu[d, i, i] = 1
        mu[i, d, i] = 1
    unit = zeros(d + 1)
    unit[d] = 1
    return mu, unit, d


def _legs(r, unit, D):
    """r^12, r^13, r^23 as D x D x D arrays."""
    d = r.shape[0]
    rr = zeros((D, D))
    rr[:d, :d] = r
    r12 = np.einsum("ij,k->ijk", rr, unit)
    r13 = np.einsum("ik,j->ijk", rr, unit)
    r23 = np.einsum("jk,i->ijk", rr, unit)
    return r12, r13, r23


def triple_product(X, Y, mu):
    """Componentwise product in A^(x)3."""
    z = np.einsum("abc,adk->bcdk", X, mu)
    z = np.einsum("bcdk,def->bckef", z, Y)
    z = np.einsum("bckef,bel->ckfl", z, mu)
    return np.einsum("ckfl,cfm->klm", z, mu)


def _check(rf, a, kind):
    s = rf.semigroup
    if rf.algebra_dim != a.dim:
        raise ShapeError("tensor family does not match algebra")
    mu, unit, _ = unitalization(a)
    D = mu.shape[0]
    legs = [_legs(rf.r[al], unit, D) for al in s.elements()]
    out = zeros((s.size, s.size, D, D, D))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            if kind == 1:
                # r13_ab r12_a - r12_a r23_b + r23_b r13_ab
                val = (triple_product(legs[g][1], legs[al][0], mu)
                       - triple_product(legs[al][0], legs[be][2], mu)
                       + triple_product(legs[be][2], legs[g][1], mu))
            else:
                # r13_a r12_b - r12_ab r23_a + r23_b r13_ab
                val = (triple_product(legs[al][1], legs[be][0], mu)
                       - triple_product(legs[g][0], legs[al][2], mu)
                       + triple_product(legs[be][2], legs[g][1], mu))
            out[al, be] = val
    name = f"associative Yang-Baxter family type-{'I' if kind == 1 else 'II'}"
    return from_residual(name, out, ("alpha", "beta", "i", "j", "k"))


def check_aybf_type1(rf, a):
    return _check(rf, a, 1)


def check_aybf_type2(rf, a):
    return _check(rf, a, 2)


def check_aybe(r, a):
    """Single AYBE r13 r12 - r12 r23 + r23 r13 = 0."""
    from .semigroup import trivial
    return _check(TensorFamily(trivial(), exact_array([r])), a, 1)


def is_skew_symmetric(rf):
    return all((rf.r[al] + rf.r[al].T == 0).all() for al in rf.semigroup.elements())


def rb_family_from_aybf1(rf, a):
    """R_alpha(x) = sum_ij r[i, j] e_i x e_j."""
    if not check_aybf_type1(rf, a).ok:
        raise InvalidFamily("rb_family_from_aybf1: not a type-I family")
    mu = a.mult
    maps = [np.einsum("ij,ixl,ljk->kx", rf.r[al], mu, mu) for al in rf.semigroup.elements()]
    return OperatorFamily(rf.semigroup, np.stack(maps))


def o_family_from_aybf2(rf, a):
    """T_alpha(f_j) = sum_i r[i, j] e_i on the coadjoint bimodule."""
    if not is_skew_symmetric(rf):
        raise InvalidFamily("o_family_from_aybf2: tensor family is not skew-symmetric")
    if not check_aybf_type2(rf, a).ok:
        raise InvalidFamily("o_family_from_aybf2: not a type-II family")
    return OperatorFamily(rf.semigroup, rf.r.copy())
