"""Associative algebras, bimodules and Hochschild 2-cocycles by structure constants.

Conventions (all arrays are exact object arrays):

    algebra   mult[i, j, k]   e_i e_j = sum_k mult[i, j, k] e_k
    bimodule  left[i, u, k]   e_i . m_u
              right[u, i, k]  m_u . e_i
    cocycle   h[i, j, k]      H(e_i, e_j) = sum_k h[i, j, k] m_k
"""

from dataclasses import dataclass

import numpy as np

from .exact_linalg import ShapeError, exact_array, is_zero, normalize, zeros
from .report import combine, from_residual, passed


class InvalidStructure(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Algebra:
    mult: np.ndarray
    unit: np.ndarray | None = None

    @property
    def dim(self):
        return self.mult.shape[0]


@dataclass(frozen=True, eq=False)
class Bimodule:
    left: np.ndarray
    right: np.ndarray

    @property
    def algebra_dim(self):
        return self.left.shape[0]

    @property
    def module_dim(self):
        return self.left.shape[1]


@dataclass(frozen=True, eq=False)
class Cocycle2:
    h: np.ndarray

    @property
    def algebra_dim(self):
        return self.h.shape[0]

    @property
    def module_dim(self):
        return self.h.shape[2]


def algebra(mult, unit=None):
    mult = exact_array(mult)
    d = mult.shape[0] if mult.ndim else 0
    if mult.shape != (d, d, d):
        raise ShapeError(f"mult must be d x d x d, got {mult.shape}")
    if unit is not None:
        unit = exact_array(unit, (d,))
    return Algebra(mult, unit)


def bimodule(left, right):
    left, right = exact_array(left), exact_array(right)
    if left.ndim != 3 or right.ndim != 3:
        raise ShapeError("actions must be 3-index tensors")
    da, dm = left.shape[0], left.shape[1]
    if left.shape != (da, dm, dm) or right.shape != (dm, da, dm):
        raise ShapeError(f"inconsistent action shapes {left.shape}, {right.shape}")
    return Bimodule(left, right)


def cocycle(h):
    h = exact_array(h)
    if h.ndim != 3 or h.shape[0] != h.shape[1]:
        raise ShapeError(f"cocycle must be dA x dA x dM, got {h.shape}")
    return Cocycle2(h)


def mul(a, x, y):
    return normalize(np.einsum("i,j,ijk->k", x, y, a.mult))


# validators

def validate_algebra(a):
    mu = a.mult
    d = a.dim
    if mu.shape != (d, d, d):
        raise ShapeError("mult shape")
    res = np.einsum("ijl,lkm->ijkm", mu, mu) - np.einsum("jkl,ilm->ijkm", mu, mu)
    rep = from_residual("associativity", res, ("a", "b", "c", "coord"))
    if not rep.ok or a.unit is None:
        return rep
    eye = np.eye(d, dtype=int).astype(object)
    left = np.einsum("i,ijk->jk", a.unit, mu)
    right = np.einsum("j,ijk->ik", a.unit, mu)
    return combine("algebra", [from_residual("left unit", left - eye, ("b", "coord")),
                               from_residual("right unit", right - eye, ("a", "coord"))])


def _check_bimodule_shapes(a, m):
    if m.algebra_dim != a.dim or m.right.shape != (m.module_dim, a.dim, m.module_dim):
        raise ShapeError("bimodule does not match algebra")


def validate_bimodule(a, m):
    _check_bimodule_shapes(a, m)
    mu, L, R = a.mult, m.left, m.right
    labels = ("x", "y", "z", "coord")
    # (ab)u = a(bu)
    r1 = np.einsum("abl,luk->abuk", mu, L) - np.einsum("bul,alk->abuk", L, L)
    # (au)b = a(ub)
    r2 = np.einsum("aul,lbk->aubk", L, R) - np.einsum("ubl,alk->aubk", R, L)
    # (ua)b = u(ab)
    r3 = np.einsum("ual,lbk->uabk", R, R) - np.einsum("abl,ulk->uabk", mu, R)
    return combine("bimodule", [from_residual("(ab)u = a(bu)", r1, labels),
                                from_residual("(au)b = a(ub)", r2, labels),
                                from_residual("(ua)b = u(ab)", r3, labels)])


def hochschild2(a, m, h):
    """a H(b,c) - H(ab,c) + H(a,bc) - H(a,b) c as an array over (a,b,c,coord)."""
    mu, L, R = a.mult, m.left, m.right
    return (np.einsum("bcl,alk->abck", h, L)
            - np.einsum("abl,lck->abck", mu, h)
            + np.einsum("bcl,alk->abck", mu, h)
            - np.einsum("abl,lck->abck", h, R))


def validate_2cocycle(h, a, m):
    _check_bimodule_shapes(a, m)
    if h.h.shape != (a.dim, a.dim, m.module_dim):
        raise ShapeError("cocycle shape does not match")
    return from_residual("2-cocycle", hochschild2(a, m, h.h), ("a", "b", "c", "coord"))


# constructions

def adjoint_bimodule(a):
    return Bimodule(a.mult.copy(), a.mult.copy())


def coadjoint_bimodule(a):
    """Actions on the dual space: (a.f)(b) = f(ba), (f.a)(b) = f(ab)."""
    mu = a.mult
    # e_i . f_j has coefficient (e_i . f_j)(e_k) = f_j(e_k e_i) = mu[k, i, j] on f_k
    left = np.transpose(mu, (1, 2, 0)).copy()
    # (f_j . e_i)(e_k) = f_j(e_i e_k) = mu[i, k, j]
    right = np.transpose(mu, (2, 0, 1)).copy()
    return Bimodule(left, right)


def zero_bimodule(a, dim):
    return Bimodule(zeros((a.dim, dim, dim)), zeros((dim, a.dim, dim)))


def multiplication_cocycle(a, scale=1):
    """H = scale * mu, a 2-cocycle with values in the adjoint bimodule."""
    return Cocycle2(normalize(a.mult * scale))


def zero_cocycle(a, m):
    return Cocycle2(zeros((a.dim, a.dim, m.module_dim)))


def semidirect_product(a, m, h=None):
    """A + M with (a,u)(b,v) = (ab, av + ub + H(a,b))."""
    if h is not None and not validate_2cocycle(h, a, m).ok:
        raise InvalidStructure("semidirect_product: H is not a 2-cocycle")
    da, dm = a.dim, m.module_dim
    d = da + dm
    mu = zeros((d, d, d))
    mu[:da, :da, :da] = a.mult
    if h is not None:
        mu[:da, :da, da:] = h.h
    mu[:da, da:, da:] = m.left
    mu[da:, :da, da:] = m.right
    unit = None
    if a.unit is not None and _unital_module(a, m):
        unit = np.concatenate([a.unit, zeros(dm)])
    out = Algebra(mu, unit)
    if unit is not None and not validate_algebra(out).ok:
        out = Algebra(mu, None)
    return out


def _unital_module(a, m):
    u = a.unit
    eye = np.eye(m.module_dim, dtype=int).astype(object)
    return (is_zero(np.einsum("i,iuk->uk", u, m.left) - eye)
            and is_zero(np.einsum("i,uik->uk", u, m.right) - eye))


def extend_by_semigroup(a, m, s):
    """A (x) k[Omega] and M (x) k[Omega]; basis index of x (x) alpha is alpha*d + x."""
    n, da = s.size, a.dim
    mu = zeros((n * da, n * da, n * da))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            mu[al * da:(al + 1) * da, be * da:(be + 1) * da, g * da:(g + 1) * da] = a.mult
    unit = None
    if a.unit is not None and s.unit is not None:
        unit = zeros(n * da)
        unit[s.unit * da:(s.unit + 1) * da] = a.unit
    ext = Algebra(mu, unit)
    if m is None:
        return ext, None
    dm = m.module_dim
    left = zeros((n * da, n * dm, n * dm))
    right = zeros((n * dm, n * da, n * dm))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            left[al * da:(al + 1) * da, be * dm:(be + 1) * dm, g * dm:(g + 1) * dm] = m.left
            g = s.product(be, al)
            right[be * dm:(be + 1) * dm, al * da:(al + 1) * da, g * dm:(g + 1) * dm] = m.right
    return ext, Bimodule(left, right)


def cocycle_extension(h, s):
    """H^(a (x) alpha, b (x) beta) = H(a, b) (x) alpha beta."""
    n = s.size
    da, dm = h.algebra_dim, h.module_dim
    out = zeros((n * da, n * da, n * dm))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            out[al * da:(al + 1) * da, be * da:(be + 1) * da, g * dm:(g + 1) * dm] = h.h
    return Cocycle2(out)


# json

def _arr(v):
    from .exact_linalg import to_jsonable
    return to_jsonable(v)


def algebra_to_json(a):
    return {"dim": a.dim, "mult": _arr(a.mult),
            "unit": None if a.unit is None else _arr(a.unit)}


def algebra_from_json(obj):
    d = int(obj["dim"])
    mult = exact_array(obj["mult"], (d, d, d)) if d else zeros((0, 0, 0))
    unit = obj.get("unit")
    return algebra(mult, None if unit is None else unit)


def bimodule_to_json(m):
    return {"algebra_dim": m.algebra_dim, "module_dim": m.module_dim,
            "left": _arr(m.left), "right": _arr(m.right)}


def bimodule_from_json(obj):
    da, dm = int(obj["algebra_dim"]), int(obj["module_dim"])
    return bimodule(exact_array(obj["left"], (da, dm, dm)), exact_array(obj["right"], (dm, da, dm)))


def cocycle_to_json(h):
    return {"h": _arr(h.h)}


def cocycle_from_json(obj, da, dm):
    return Cocycle2(exact_array(obj["h"], (da, da, dm)))


# catalogue of small algebras

def field_k():
    """k with e e = e."""
    return algebra([[[1]]], unit=[1])


def zero_algebra(d):
    return algebra(zeros((d, d, d)))


def left_unit_algebra():
    """2-dim: e1 e1 = e1, e1 e2 = e2, others zero."""
    mu = zeros((2, 2, 2))
    mu[0, 0, 0] = 1
    mu[0, 1, 1] = 1
    return algebra(mu)


def truncated_poly(n):
    """k[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    mu = zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mu[i, j, i + j] = 1
    unit = zeros(n)
    unit[0] = 1
    return algebra(mu, unit)


def nilpotent_poly(n):
    """span{x, ..., x^n} inside k[x]/(x^(n+1)); basis index i stands for x^(i+1)."""
    mu = zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            if i + j + 2 <= n:
                mu[i, j, i + j + 1] = 1
    return algebra(mu)


def diagonal(n):
    """k^n with componentwise product."""
    mu = zeros((n, n, n))
    for i in range(n):
        mu[i, i, i] = 1
    return algebra(mu, [1] * n)


def upper_triangular():
    """2x2 upper triangular matrices, basis E11, E12, E22."""
    mu = zeros((3, 3, 3))
    mu[0, 0, 0] = 1
    mu[0, 1, 1] = 1
    mu[1, 2, 1] = 1
    mu[2, 2, 2] = 1
    return algebra(mu, [1, 0, 1])
