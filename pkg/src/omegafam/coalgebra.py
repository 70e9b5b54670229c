"""Coalgebras, cobimodules, coHochschild 2-cocycles and operator cofamilies.

Conventions (input index first):

    comult[c, i, j]   Delta(e_c) = sum comult[c, i, j] e_i (x) e_j
    dl[n, i, m]       Delta^l(n_n) = sum dl[n, i, m] c_i (x) n_m
    dr[n, m, i]       Delta^r(n_n) = sum dr[n, m, i] n_m (x) c_i
    h[n, i, j]        h(n_n) = sum h[n, i, j] c_i (x) c_j
    S_alpha           matrix (dim N, dim C), S(c_j) = sum S[p, j] n_p

Validators work on the coalgebra side directly.  Dualization is a transpose
under dual bases and lands on the algebra-side conventions.
"""

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .exact_linalg import ShapeError, exact_array, normalize, to_jsonable, zeros
from .families import InvalidFamily, OperatorFamily
from .family_algebras import NSFamily
from .report import combine, from_residual


@dataclass(frozen=True, eq=False)
class Coalgebra:
    comult: np.ndarray
    counit: np.ndarray | None = None

    @property
    def dim(self):
        return self.comult.shape[0]


@dataclass(frozen=True, eq=False)
class Cobimodule:
    dl: np.ndarray
    dr: np.ndarray

    @property
    def module_dim(self):
        return self.dl.shape[0]

    @property
    def coalgebra_dim(self):
        return self.dl.shape[1]


@dataclass(frozen=True, eq=False)
class CoCocycle:
    h: np.ndarray


@dataclass(frozen=True, eq=False)
class CoFamily:
    semigroup: object
    maps: np.ndarray


@dataclass(frozen=True, eq=False)
class NSCofamily:
    semigroup: object
    prec: np.ndarray   # [alpha, n, p, q]
    succ: np.ndarray
    vee: np.ndarray    # [alpha, beta, n, p, q]

    @property
    def dim(self):
        return self.prec.shape[1]


def coalgebra(comult, counit=None):
    comult = exact_array(comult)
    d = comult.shape[0]
    if comult.shape != (d, d, d):
        raise ShapeError(f"comult must be d x d x d, got {comult.shape}")
    return Coalgebra(comult, None if counit is None else exact_array(counit, (d,)))


def cobimodule(dl, dr):
    dl, dr = exact_array(dl), exact_array(dr)
    dn, dc = dl.shape[0], dl.shape[1]
    if dl.shape != (dn, dc, dn) or dr.shape != (dn, dn, dc):
        raise ShapeError(f"inconsistent coaction shapes {dl.shape}, {dr.shape}")
    return Cobimodule(dl, dr)


def cococycle(h):
    return CoCocycle(exact_array(h))


def cofamily(s, maps):
    arr = exact_array(maps)
    if arr.ndim != 3 or arr.shape[0] != s.size:
        raise ShapeError(f"need one matrix per element, got {arr.shape}")
    return CoFamily(s, arr)


def _shapes(c, n, h=None):
    if n.coalgebra_dim != c.dim:
        raise ShapeError("cobimodule does not match coalgebra")
    if h is not None and h.h.shape != (n.module_dim, c.dim, c.dim):
        raise ShapeError("coHochschild cochain shape")


def validate_coalgebra(c):
    D = c.comult
    res = np.einsum("clz,lab->cabz", D, D) - np.einsum("cal,lbz->cabz", D, D)
    rep = from_residual("coassociativity", res, ("input", "i", "j", "k"))
    if not rep.ok or c.counit is None:
        return rep
    eye = np.eye(c.dim, dtype=int).astype(object)
    left = np.einsum("cij,i->cj", D, c.counit) - eye
    right = np.einsum("cij,j->ci", D, c.counit) - eye
    return combine("coalgebra", [from_residual("left counit", left, ("input", "coord")),
                                 from_residual("right counit", right, ("input", "coord"))])


def validate_cobimodule(c, n):
    _shapes(c, n)
    D, L, R = c.comult, n.dl, n.dr
    labels = ("input", "i", "j", "k")
    r1 = np.einsum("nlm,lab->nabm", L, D) - np.einsum("nap,pbm->nabm", L, L)
    r2 = np.einsum("npb,pam->namb", R, L) - np.einsum("nap,pmb->namb", L, R)
    r3 = np.einsum("npb,pma->nmab", R, R) - np.einsum("nml,lab->nmab", R, D)
    return combine("cobimodule", [from_residual("(D x id) Dl = (id x Dl) Dl", r1, labels),
                                  from_residual("(Dl x id) Dr = (id x Dr) Dl", r2, labels),
                                  from_residual("(Dr x id) Dr = (id x D) Dr", r3, labels)])


def cococycle_residual(h, c, n):
    D, L, R, hh = c.comult, n.dl, n.dr, h.h
    return (np.einsum("nap,pbc->nabc", L, hh)
            - np.einsum("nlc,lab->nabc", hh, D)
            + np.einsum("nal,lbc->nabc", hh, D)
            - np.einsum("npc,pab->nabc", R, hh))


def validate_cococycle(h, c, n):
    _shapes(c, n, h)
    return from_residual("coHochschild 2-cocycle", cococycle_residual(h, c, n),
                         ("input", "i", "j", "k"))


def self_cobimodule(c):
    return Cobimodule(c.comult.copy(), c.comult.copy())


def twisted_cofamily_residual(sf, c, n, h=None):
    """(S_a x S_b) D - ((S_a x id) Dl + (id x S_b) Dr + (S_a x S_b) h) S_ab."""
    s = sf.semigroup
    dn, dc = n.module_dim, c.dim
    if sf.maps.shape != (s.size, dn, dc):
        raise ShapeError(f"cofamily maps must be {(s.size, dn, dc)}, got {sf.maps.shape}")
    S = sf.maps
    out = zeros((s.size, s.size, dc, dn, dn))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            lhs = np.einsum("cij,pi,qj->cpq", c.comult, S[al], S[be])
            inner = (np.einsum("nim,pi->npm", n.dl, S[al])
                     + np.einsum("nmi,qi->nmq", n.dr, S[be]))
            if h is not None:
                inner = inner + np.einsum("nij,pi,qj->npq", h.h, S[al], S[be])
            out[al, be] = lhs - np.einsum("nc,npq->cpq", S[g], inner)
    return normalize(out)


def check_twisted_o_cofamily(sf, c, n, h=None):
    _shapes(c, n, h)
    if h is not None and not validate_cococycle(h, c, n).ok:
        raise InvalidFamily("check_twisted_o_cofamily: h is not a coHochschild 2-cocycle")
    name = "twisted O-operator cofamily" if h is not None else "O-operator cofamily"
    return from_residual(name, twisted_cofamily_residual(sf, c, n, h),
                         ("alpha", "beta", "input", "p", "q"))


# dualization

def _t(x):
    return np.transpose(x, (1, 2, 0)).copy()


def _ct(x):
    return np.transpose(x, (2, 0, 1)).copy()


def dual_algebra(c):
    return alg.Algebra(_t(c.comult), None if c.counit is None else c.counit.copy())


def dual_bimodule(n):
    return alg.Bimodule(_t(n.dl), _t(n.dr))


def dual_cocycle(h):
    return alg.Cocycle2(_t(h.h))


def dualize_cofamily(sf, c, n, h=None, check=True):
    """(S^dual, C^dual, N^dual, H) on the algebra side."""
    if check and not check_twisted_o_cofamily(sf, c, n, h).ok:
        raise InvalidFamily("dualize_cofamily: cofamily does not validate")
    t = OperatorFamily(sf.semigroup, np.transpose(sf.maps, (0, 2, 1)).copy())
    return t, dual_algebra(c), dual_bimodule(n), None if h is None else dual_cocycle(h)


def codualize_context(t, a, m, h=None):
    """The inverse transpose: an algebra-side context as coalgebra-side data."""
    c = Coalgebra(_ct(a.mult), None if a.unit is None else a.unit.copy())
    n = Cobimodule(_ct(m.left), _ct(m.right))
    sf = CoFamily(t.semigroup, np.transpose(t.maps, (0, 2, 1)).copy())
    return sf, c, n, None if h is None else CoCocycle(_ct(h.h))


def induce_ns_cofamily(sf, c, n, h=None):
    """D_<a = (id x S_a) Dr, D_>a = (S_a x id) Dl, D_vee = (S_a x S_b) h."""
    if not check_twisted_o_cofamily(sf, c, n, h).ok:
        raise InvalidFamily("induce_ns_cofamily: cofamily does not validate")
    s = sf.semigroup
    S = sf.maps
    dn = n.module_dim
    prec = np.stack([np.einsum("npi,qi->npq", n.dr, S[al]) for al in s.elements()])
    succ = np.stack([np.einsum("niq,pi->npq", n.dl, S[al]) for al in s.elements()])
    vee = zeros((s.size, s.size, dn, dn, dn))
    if h is not None:
        for al in s.elements():
            for be in s.elements():
                vee[al, be] = np.einsum("nij,pi,qj->npq", h.h, S[al], S[be])
    return NSCofamily(s, normalize(prec), normalize(succ), normalize(vee))


def _lc(P, Q):
    """(D_P x id) D_Q as (input, a, b, c)."""
    return np.einsum("nlc,lab->nabc", Q, P)


def _rc(P, Q):
    """(id x D_P) D_Q."""
    return np.einsum("nal,lbc->nabc", Q, P)


def validate_ns_cofamily(f):
    s = f.semigroup
    d = f.dim
    out = zeros((4, s.size, s.size, s.size, d, d, d, d))
    for al in s.elements():
        for be in s.elements():
            ab = s.product(al, be)
            tot = f.succ[al] + f.prec[be] + f.vee[al, be]
            r1 = _lc(f.prec[al], f.prec[be]) - _rc(tot, f.prec[ab])
            r2 = _lc(f.succ[al], f.prec[be]) - _rc(f.prec[be], f.succ[al])
            r3 = _lc(tot, f.succ[ab]) - _rc(f.succ[be], f.succ[al])
            for ga in s.elements():
                bg = s.product(be, ga)
                tot2 = f.succ[be] + f.prec[ga] + f.vee[be, ga]
                out[0, al, be, ga] = r1
                out[1, al, be, ga] = r2
                out[2, al, be, ga] = r3
                out[3, al, be, ga] = (_lc(tot, f.vee[ab, ga]) + _lc(f.vee[al, be], f.prec[ga])
                                      - _rc(f.vee[be, ga], f.succ[al]) - _rc(tot2, f.vee[al, bg]))
    return from_residual("NS-cofamily coalgebra", normalize(out),
                         ("axiom", "alpha", "beta", "gamma", "input", "i", "j", "k"))


def dual_ns_family(f):
    """The NS-family on the dual space."""
    s = f.semigroup
    return NSFamily(s, np.stack([_t(x) for x in f.prec]), np.stack([_t(x) for x in f.succ]),
                    np.stack([np.stack([_t(x) for x in row]) for row in f.vee]))


# json

def coalgebra_to_json(c):
    return {"dim": c.dim, "comult": to_jsonable(c.comult),
            "counit": None if c.counit is None else to_jsonable(c.counit)}


def coalgebra_from_json(obj):
    d = int(obj["dim"])
    return coalgebra(exact_array(obj["comult"], (d, d, d)), obj.get("counit"))


def cobimodule_to_json(n):
    return {"coalgebra_dim": n.coalgebra_dim, "module_dim": n.module_dim,
            "coactions": {"left": to_jsonable(n.dl), "right": to_jsonable(n.dr)}}


def cobimodule_from_json(obj):
    dc, dn = int(obj["coalgebra_dim"]), int(obj["module_dim"])
    co = obj["coactions"]
    return cobimodule(exact_array(co["left"], (dn, dc, dn)), exact_array(co["right"], (dn, dn, dc)))
