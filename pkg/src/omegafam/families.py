"""Semigroup-indexed operator families and their defining identities.

A family stores one matrix per semigroup element in `maps[alpha]`, with
columns indexed by the domain basis: T_alpha(e_u) = sum_i maps[alpha][i, u] e_i.
Every check works on basis pairs; the identities are multilinear so that
is complete.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import algebra as alg
from .exact_linalg import (ShapeError, SingularMatrixError, exact_array, identity,
                           inverse, is_zero, kernel_basis, matpow, normalize, to_jsonable, zeros)
from .report import ValidationReport, combine, from_residual, passed

KINDS = ("rota_baxter", "o_operator", "twisted_o_operator", "nijenhuis",
         "reynolds", "derivation", "weighted_rb")

PAIR_LABELS = ("alpha", "beta", "u", "v", "coord")


class InvalidFamily(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class OperatorFamily:
    semigroup: object
    maps: np.ndarray

    @property
    def codomain_dim(self):
        return self.maps.shape[1]

    @property
    def domain_dim(self):
        return self.maps.shape[2]

    def __getitem__(self, alpha):
        return self.maps[alpha]


@dataclass(frozen=True)
class FamilyKind:
    tag: str
    weight: object = None

    def __post_init__(self):
        if self.tag not in KINDS:
            raise ValueError(f"unknown family kind {self.tag!r}")


def family(s, maps):
    """Family from a list/dict of matrices indexed by semigroup elements."""
    if isinstance(maps, dict):
        maps = [maps[k] if k in maps else maps[str(k)] for k in range(s.size)]
    arr = exact_array(maps)
    if arr.ndim != 3 or arr.shape[0] != s.size:
        raise ShapeError(f"need one matrix per element, got shape {arr.shape}")
    return OperatorFamily(s, arr)


def constant_family(s, m):
    m = exact_array(m)
    return OperatorFamily(s, np.stack([m] * s.size))


def zero_family(s, cod, dom):
    return OperatorFamily(s, zeros((s.size, cod, dom)))


def scaled(t, c):
    return OperatorFamily(t.semigroup, normalize(t.maps * c))


def family_to_json(t, kind=None):
    out = {"maps": {str(a): to_jsonable(t.maps[a]) for a in t.semigroup.elements()}}
    if kind is not None:
        out["kind"] = kind
    return out


def _pairs(s):
    for al in s.elements():
        for be in s.elements():
            yield al, be, s.product(al, be)


def _shape(t, cod, dom, who):
    if t.maps.shape[1:] != (cod, dom):
        raise ShapeError(f"{who}: family maps are {t.maps.shape[1:]}, expected {(cod, dom)}")


# twisted O-operator families

def twisted_residual(t, a, m, h=None):
    """LHS - RHS of T_a(u)T_b(v) = T_ab(T_a(u) v + u T_b(v) + H(T_a u, T_b v))."""
    s = t.semigroup
    da, dm = a.dim, m.module_dim
    _shape(t, da, dm, "twisted O-family")
    out = zeros((s.size, s.size, dm, dm, da))
    for al, be, g in _pairs(s):
        Ta, Tb, Tg = t.maps[al], t.maps[be], t.maps[g]
        lhs = np.einsum("iu,jv,ijk->uvk", Ta, Tb, a.mult)
        inner = np.einsum("iu,ivk->uvk", Ta, m.left) + np.einsum("jv,ujk->uvk", Tb, m.right)
        if h is not None:
            inner = inner + np.einsum("iu,jv,ijk->uvk", Ta, Tb, h.h)
        out[al, be] = lhs - np.einsum("kw,uvw->uvk", Tg, inner)
    return out


def check_twisted_o_family(t, a, m, h=None):
    name = "twisted O-operator family" if h is not None else "O-operator family"
    return from_residual(name, twisted_residual(t, a, m, h), PAIR_LABELS)


def check_rota_baxter_family(r, a):
    """R_a(x)R_b(y) = R_ab(R_a(x) y + x R_b(y)), written out on A directly."""
    s = r.semigroup
    _shape(r, a.dim, a.dim, "Rota-Baxter family")
    mu = a.mult
    out = zeros((s.size, s.size) + (a.dim,) * 3)
    for al, be, g in _pairs(s):
        Ra, Rb, Rg = r.maps[al], r.maps[be], r.maps[g]
        lhs = np.einsum("iu,jv,ijk->uvk", Ra, Rb, mu)
        inner = np.einsum("iu,ivk->uvk", Ra, mu) + np.einsum("jv,ujk->uvk", Rb, mu)
        out[al, be] = lhs - np.einsum("kw,uvw->uvk", Rg, inner)
    return from_residual("Rota-Baxter family", out, PAIR_LABELS)


def check_derivation_family(d, a, m):
    """D_ab(xy) = D_a(x) y + x D_b(y) for D_alpha : A -> M."""
    s = d.semigroup
    _shape(d, m.module_dim, a.dim, "derivation family")
    out = zeros((s.size, s.size, a.dim, a.dim, m.module_dim))
    for al, be, g in _pairs(s):
        Da, Db, Dg = d.maps[al], d.maps[be], d.maps[g]
        lhs = np.einsum("xyl,kl->xyk", a.mult, Dg)
        rhs = np.einsum("ux,uyk->xyk", Da, m.right) + np.einsum("vy,xvk->xyk", Db, m.left)
        out[al, be] = lhs - rhs
    return from_residual("derivation family", out, PAIR_LABELS)


def nijenhuis_residual(n, a):
    s = n.semigroup
    _shape(n, a.dim, a.dim, "Nijenhuis family")
    mu = a.mult
    out = zeros((s.size, s.size) + (a.dim,) * 3)
    for al, be, g in _pairs(s):
        Na, Nb, Ng = n.maps[al], n.maps[be], n.maps[g]
        lhs = np.einsum("iu,jv,ijk->uvk", Na, Nb, mu)
        inner = (np.einsum("iu,ivk->uvk", Na, mu) + np.einsum("jv,ujk->uvk", Nb, mu)
                 - np.einsum("uvl,kl->uvk", mu, Ng))
        out[al, be] = lhs - np.einsum("kw,uvw->uvk", Ng, inner)
    return out


def check_nijenhuis_family(n, a):
    return from_residual("Nijenhuis family", nijenhuis_residual(n, a), PAIR_LABELS)


def check_reynolds_family(r, a):
    """R_a(x)R_b(y) = R_ab(R_a(x) y + x R_b(y) - R_a(x) R_b(y))."""
    s = r.semigroup
    _shape(r, a.dim, a.dim, "Reynolds family")
    mu = a.mult
    out = zeros((s.size, s.size) + (a.dim,) * 3)
    for al, be, g in _pairs(s):
        Ra, Rb, Rg = r.maps[al], r.maps[be], r.maps[g]
        prod = np.einsum("iu,jv,ijk->uvk", Ra, Rb, mu)
        inner = np.einsum("iu,ivk->uvk", Ra, mu) + np.einsum("jv,ujk->uvk", Rb, mu) - prod
        out[al, be] = prod - np.einsum("kw,uvw->uvk", Rg, inner)
    return from_residual("Reynolds family", out, PAIR_LABELS)


def check_compatible_pair(t, s_fam, a, m):
    """T_a(u)S_b(v) + S_a(u)T_b(v) = T_ab(S_a(u)v + uS_b(v)) + S_ab(T_a(u)v + uT_b(v))."""
    sg = t.semigroup
    _shape(t, a.dim, m.module_dim, "compatible pair")
    _shape(s_fam, a.dim, m.module_dim, "compatible pair")
    mu = a.mult
    out = zeros((sg.size, sg.size, m.module_dim, m.module_dim, a.dim))

    def inner(X, Y):
        return np.einsum("iu,ivk->uvk", X, m.left) + np.einsum("jv,ujk->uvk", Y, m.right)

    for al, be, g in _pairs(sg):
        Ta, Tb, Tg = t.maps[al], t.maps[be], t.maps[g]
        Sa, Sb, Sg = s_fam.maps[al], s_fam.maps[be], s_fam.maps[g]
        lhs = np.einsum("iu,jv,ijk->uvk", Ta, Sb, mu) + np.einsum("iu,jv,ijk->uvk", Sa, Tb, mu)
        rhs = (np.einsum("kw,uvw->uvk", Tg, inner(Sa, Sb))
               + np.einsum("kw,uvw->uvk", Sg, inner(Ta, Tb)))
        out[al, be] = lhs - rhs
    return from_residual("compatible pair", out, PAIR_LABELS)


# constructions

def _invert_members(t, who):
    out = []
    for al in t.semigroup.elements():
        try:
            out.append(inverse(t.maps[al]))
        except SingularMatrixError:
            raise SingularMatrixError(f"{who}: member {al} is singular") from None
    return OperatorFamily(t.semigroup, np.stack(out))


def invert_derivation_family(d, a, m):
    if a.dim != m.module_dim:
        raise ShapeError("invert_derivation_family: dim A != dim M")
    rep = check_derivation_family(d, a, m)
    if not rep.ok:
        raise InvalidFamily(f"not a derivation family: {rep.witness}")
    return _invert_members(d, "invert_derivation_family")


def nijenhuis_from_compatible_pair(t, s_fam, a, m, invert="s"):
    """N_alpha = T_alpha S_alpha^-1 (or S_alpha T_alpha^-1 with invert="t")."""
    if invert not in ("s", "t"):
        raise ValueError("invert must be 's' or 't'")
    for fam in (t, s_fam):
        rep = check_twisted_o_family(fam, a, m)
        if not rep.ok:
            raise InvalidFamily(f"not an O-operator family: {rep.witness}")
    rep = check_compatible_pair(t, s_fam, a, m)
    if not rep.ok:
        raise InvalidFamily(f"incompatible pair: {rep.witness}")
    top, bottom = (t, s_fam) if invert == "s" else (s_fam, t)
    inv = _invert_members(bottom, "nijenhuis_from_compatible_pair")
    maps = np.stack([normalize(top.maps[al] @ inv.maps[al]) for al in t.semigroup.elements()])
    return OperatorFamily(t.semigroup, maps)


def lift_to_semidirect(t, a, m):
    """T^_alpha(x, u) = (T_alpha(u), 0) on A + M."""
    da, dm = a.dim, m.module_dim
    _shape(t, da, dm, "lift_to_semidirect")
    out = zeros((t.semigroup.size, da + dm, da + dm))
    out[:, :da, da:] = t.maps
    return OperatorFamily(t.semigroup, out)


def collapse_nijenhuis(n, a, s=None):
    s = s or n.semigroup
    if not check_nijenhuis_family(n, a).ok:
        raise InvalidFamily("collapse_nijenhuis: not a Nijenhuis family")
    return _block_diagonal(n, s)


def _block_diagonal(t, s):
    cod, dom = t.codomain_dim, t.domain_dim
    out = zeros((s.size * cod, s.size * dom))
    for al in s.elements():
        out[al * cod:(al + 1) * cod, al * dom:(al + 1) * dom] = t.maps[al]
    return out


def collapse_family(t, a, m, h=None, s=None):
    """Single operator T(u (x) alpha) = T_alpha(u) (x) alpha on M (x) k[Omega]."""
    s = s or t.semigroup
    if not check_twisted_o_family(t, a, m, h).ok:
        raise InvalidFamily("collapse_family: family does not validate")
    return _block_diagonal(t, s)


def check_single_twisted(T, a, m, h=None):
    """The twisted identity for one operator (a family over the trivial semigroup)."""
    from .semigroup import trivial
    return check_twisted_o_family(OperatorFamily(trivial(), exact_array([T])), a, m, h)


def check_single_nijenhuis(N, a):
    from .semigroup import trivial
    return check_nijenhuis_family(OperatorFamily(trivial(), exact_array([N])), a)


def graph_subalgebra_check(t, a, m, h=None):
    """Gr(T_a) * Gr(T_b) inside Gr(T_ab) in the H-twisted semidirect product.

    Membership is tested against the annihilator of each graph, computed
    with kernel_basis, so this route never uses the twisted identity.
    """
    s = t.semigroup
    da, dm = a.dim, m.module_dim
    _shape(t, da, dm, "graph_subalgebra_check")
    hh = h if h is not None else alg.zero_cocycle(a, m)
    sd = _raw_semidirect(a, m, hh)
    graphs = [np.concatenate([t.maps[al], identity(dm)], axis=0) for al in s.elements()]
    annihilators = []
    for G in graphs:
        ker = kernel_basis(G.T.copy())
        annihilators.append(np.stack(ker) if ker else zeros((0, da + dm)))
    for al, be, g in _pairs(s):
        prods = np.einsum("iu,jv,ijk->uvk", graphs[al], graphs[be], sd.mult)
        test = np.einsum("rk,uvk->uvr", annihilators[g], prods)
        for u in range(dm):
            for v in range(dm):
                if not is_zero(test[u, v]):
                    return ValidationReport("graph subalgebra family", False,
                                            {"alpha": al, "beta": be, "u": u, "v": v},
                                            "product of graph vectors leaves Gr(T_ab)")
    return ValidationReport("graph subalgebra family", True)


def _raw_semidirect(a, m, h):
    # no cocycle validation here: the graph test must run on any input
    da, dm = a.dim, m.module_dim
    d = da + dm
    mu = zeros((d, d, d))
    mu[:da, :da, :da] = a.mult
    mu[:da, :da, da:] = h.h
    mu[:da, da:, da:] = m.left
    mu[da:, :da, da:] = m.right
    return alg.Algebra(mu)


# Reynolds families

def reynolds_from_nilpotent_derivation(d, a, nil_bound):
    m = alg.adjoint_bimodule(a)
    rep = check_derivation_family(d, a, m)
    if not rep.ok:
        raise InvalidFamily(f"not a derivation family: {rep.witness}")
    maps = []
    for al in d.semigroup.elements():
        D = d.maps[al]
        if not is_zero(matpow(D, nil_bound)):
            raise InvalidFamily(f"member {al} is not nilpotent within bound {nil_bound}")
        R = zeros(D.shape)
        P = identity(a.dim)
        for k in range(nil_bound):
            R = R + (-1) ** k * P
            P = normalize(P @ D)
        maps.append(normalize(R))
    return OperatorFamily(d.semigroup, np.stack(maps))


def reynolds_binomial_identity(p, q):
    lhs = (sum(comb(i + q, i) for i in range(p + 1)) + sum(comb(p + j, j) for j in range(q + 1))
           - sum(comb(i + j, i) for i in range(p + 1) for j in range(q + 1)))
    return lhs == 1


def reynolds_to_derivation(r, a):
    """{R_alpha^-1 - id} for a family with invertible members."""
    inv = _invert_members(r, "reynolds_to_derivation")
    return OperatorFamily(r.semigroup, normalize(inv.maps - identity(a.dim)[None]))


# the Nijenhuis twisted context

def build_nijenhuis_twisted_context(n, a, s=None):
    """((A (x) kOmega)_N, A as bimodule over it, H, Id family).

    Product (x (x) al)(y (x) be) = (N_al(x) y + x N_be(y) - N_albe(xy)) (x) albe,
    actions (x (x) al).y = N_al(x) y and y.(x (x) al) = y N_al(x),
    H(x (x) al, y (x) be) = -N_albe(xy), and Id_al(x) = x (x) al.
    """
    s = s or n.semigroup
    if not check_nijenhuis_family(n, a).ok:
        raise InvalidFamily("build_nijenhuis_twisted_context: not a Nijenhuis family")
    d, k = a.dim, s.size
    mu = a.mult
    D = d * k
    prod = zeros((D, D, D))
    left = zeros((D, d, d))
    right = zeros((d, D, d))
    h = zeros((D, D, d))
    for al in s.elements():
        Na = n.maps[al]
        left[al * d:(al + 1) * d] = np.einsum("iu,ivk->uvk", Na, mu)
        right[:, al * d:(al + 1) * d] = np.einsum("jv,ujk->uvk", Na, mu)
        for be in s.elements():
            g = s.product(al, be)
            Nb, Ng = n.maps[be], n.maps[g]
            block = (np.einsum("iu,ivk->uvk", Na, mu) + np.einsum("jv,ujk->uvk", Nb, mu)
                     - np.einsum("uvl,kl->uvk", mu, Ng))
            prod[al * d:(al + 1) * d, be * d:(be + 1) * d, g * d:(g + 1) * d] = block
            h[al * d:(al + 1) * d, be * d:(be + 1) * d] = -np.einsum("uvl,kl->uvk", mu, Ng)
    ids = zeros((k, D, d))
    for al in s.elements():
        ids[al, al * d:(al + 1) * d, :] = identity(d)
    A_N = alg.Algebra(normalize(prod))
    M = alg.Bimodule(normalize(left), normalize(right))
    H = alg.Cocycle2(normalize(h))
    return A_N, M, H, OperatorFamily(s, ids)


def identity_family(s, d):
    return constant_family(s, identity(d))


def tensor_identity_twisted_context(a, s):
    """A (x) kOmega acting on A through a.b, with H = -ab and Id_alpha."""
    return build_nijenhuis_twisted_context(identity_family(s, a.dim), a, s)
