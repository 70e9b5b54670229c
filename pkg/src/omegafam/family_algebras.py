"""Dendriform, tridendriform and NS-family algebras, Omega-associative algebras.

Bilinear operations are 3-index tensors op[x, y, k] (coefficient of e_k in
x op y).  Per-element operations carry a leading alpha axis, per-pair
operations (vee, Omega-products) two leading axes.
"""

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .exact_linalg import ShapeError, exact_array, identity, is_zero, normalize, zeros
from .families import InvalidFamily, OperatorFamily, check_nijenhuis_family, check_twisted_o_family
from .report import ValidationReport, combine, from_residual
from .semigroup import trivial

TRIPLE = ("alpha", "beta", "gamma", "x", "y", "z", "coord")


@dataclass(frozen=True, eq=False)
class DendriformFamily:
    semigroup: object
    prec: np.ndarray
    succ: np.ndarray

    @property
    def dim(self):
        return self.prec.shape[1]


@dataclass(frozen=True, eq=False)
class TridendriformFamily:
    semigroup: object
    prec: np.ndarray
    succ: np.ndarray
    odot: np.ndarray

    @property
    def dim(self):
        return self.prec.shape[1]


@dataclass(frozen=True, eq=False)
class NSFamily:
    semigroup: object
    prec: np.ndarray
    succ: np.ndarray
    vee: np.ndarray

    @property
    def dim(self):
        return self.prec.shape[1]


@dataclass(frozen=True, eq=False)
class NSAlgebra:
    prec: np.ndarray
    succ: np.ndarray
    vee: np.ndarray

    @property
    def dim(self):
        return self.prec.shape[0]


@dataclass(frozen=True, eq=False)
class OmegaAssocAlgebra:
    semigroup: object
    mult: np.ndarray

    @property
    def dim(self):
        return self.mult.shape[2]


@dataclass(frozen=True, eq=False)
class OmegaBimodule:
    left: np.ndarray   # [al, be, a, u, k]: a ._{al,be} u
    right: np.ndarray  # [al, be, u, a, k]: u ._{al,be} a

    @property
    def algebra_dim(self):
        return self.left.shape[2]

    @property
    def module_dim(self):
        return self.left.shape[3]


def _check_ops(s, d, **ops):
    for name, (arr, lead) in ops.items():
        want = (s.size,) * lead + (d, d, d)
        if arr.shape != want:
            raise ShapeError(f"{name} has shape {arr.shape}, expected {want}")


def dendriform_family(s, prec, succ):
    prec, succ = exact_array(prec), exact_array(succ)
    d = prec.shape[1]
    _check_ops(s, d, prec=(prec, 1), succ=(succ, 1))
    return DendriformFamily(s, prec, succ)


def ns_family(s, prec, succ, vee):
    prec, succ, vee = exact_array(prec), exact_array(succ), exact_array(vee)
    d = prec.shape[1]
    _check_ops(s, d, prec=(prec, 1), succ=(succ, 1), vee=(vee, 2))
    return NSFamily(s, prec, succ, vee)


def tridendriform_family(s, prec, succ, odot):
    prec, succ, odot = exact_array(prec), exact_array(succ), exact_array(odot)
    d = prec.shape[1]
    _check_ops(s, d, prec=(prec, 1), succ=(succ, 1))
    if odot.shape != (d, d, d):
        raise ShapeError("odot shape")
    return TridendriformFamily(s, prec, succ, odot)


def zero_ns_family(s, d):
    return NSFamily(s, zeros((s.size, d, d, d)), zeros((s.size, d, d, d)),
                    zeros((s.size, s.size, d, d, d)))


def as_ns_family(d):
    """Dendriform families are NS-families with vee = 0, tridendriform ones
    have vee_{al,be} = odot."""
    if isinstance(d, NSFamily):
        return d
    s = d.semigroup
    if isinstance(d, TridendriformFamily):
        return NSFamily(s, d.prec, d.succ, np.stack([np.stack([d.odot] * s.size)] * s.size))
    return NSFamily(s, d.prec, d.succ, zeros((s.size, s.size) + (d.dim,) * 3))


# (x P y) Q z and x Q (y P z), as arrays over (x, y, z, coord)

def _l(P, Q):
    return np.einsum("xyl,lzk->xyzk", P, Q)


def _r(P, Q):
    return np.einsum("yzl,xlk->xyzk", P, Q)


def ns_axiom_residuals(inner, outer):
    """The four NS-family axioms with inner operations from `inner` and outer
    ones from `outer` (pass the same family twice for the plain axioms).

    Returns an array indexed by (axiom, alpha, beta, gamma, x, y, z, coord).
    Splitting inner/outer lets deformation code take coefficients of t^n.
    """
    s = inner.semigroup
    n, d = s.size, inner.dim
    out = zeros((4, n, n, n, d, d, d, d))

    def star(f, al, be):
        return f.prec[be] + f.succ[al] + f.vee[al, be]

    for al in s.elements():
        for be in s.elements():
            ab = s.product(al, be)
            r1 = _l(inner.prec[al], outer.prec[be]) - _r(star(inner, al, be), outer.prec[ab])
            r2 = _l(inner.succ[al], outer.prec[be]) - _r(inner.prec[be], outer.succ[al])
            r3 = _l(star(inner, al, be), outer.succ[ab]) - _r(inner.succ[be], outer.succ[al])
            for ga in s.elements():
                bg = s.product(be, ga)
                out[0, al, be, ga] = r1
                out[1, al, be, ga] = r2
                out[2, al, be, ga] = r3
                out[3, al, be, ga] = (_l(star(inner, al, be), outer.vee[ab, ga])
                                      + _l(inner.vee[al, be], outer.prec[ga])
                                      - _r(inner.vee[be, ga], outer.succ[al])
                                      - _r(star(inner, be, ga), outer.vee[al, bg]))
    return out


def validate_ns_family(f):
    res = ns_axiom_residuals(f, f)
    return from_residual("NS-family algebra", res, ("axiom",) + TRIPLE)


def validate_dendriform_family(f):
    s = f.semigroup
    n, d = s.size, f.dim
    out = zeros((3, n, n, d, d, d, d))
    for al in s.elements():
        for be in s.elements():
            ab = s.product(al, be)
            out[0, al, be] = (_l(f.prec[al], f.prec[be])
                              - _r(f.prec[be] + f.succ[al], f.prec[ab]))
            out[1, al, be] = _l(f.succ[al], f.prec[be]) - _r(f.prec[be], f.succ[al])
            out[2, al, be] = (_l(f.prec[be] + f.succ[al], f.succ[ab])
                              - _r(f.succ[be], f.succ[al]))
    return from_residual("dendriform family algebra", out,
                         ("axiom", "alpha", "beta", "x", "y", "z", "coord"))


def validate_tridendriform_family(f):
    s = f.semigroup
    n, d = s.size, f.dim
    o = f.odot
    out = zeros((7, n, n, d, d, d, d))
    for al in s.elements():
        for be in s.elements():
            ab = s.product(al, be)
            out[0, al, be] = (_l(f.prec[al], f.prec[be])
                              - _r(f.prec[be] + f.succ[al] + o, f.prec[ab]))
            out[1, al, be] = _l(f.succ[al], f.prec[be]) - _r(f.prec[be], f.succ[al])
            out[2, al, be] = (_l(f.prec[be] + f.succ[al] + o, f.succ[ab])
                              - _r(f.succ[be], f.succ[al]))
            out[3, al, be] = _l(f.succ[al], o) - _r(o, f.succ[al])
            out[4, al, be] = _l(f.prec[al], o) - _r(f.succ[al], o)
            out[5, al, be] = _l(o, f.prec[al]) - _r(f.prec[al], o)
            out[6, al, be] = _l(o, o) - _r(o, o)
    return from_residual("tridendriform family algebra", out,
                         ("axiom", "alpha", "beta", "x", "y", "z", "coord"))


def validate_ns_algebra(a):
    return validate_ns_family(NSFamily(trivial(), a.prec[None], a.succ[None], a.vee[None, None]))


def validate_omega_associative(o):
    s = o.semigroup
    n, d = s.size, o.dim
    out = zeros((n, n, n, d, d, d, d))
    for al in s.elements():
        for be in s.elements():
            for ga in s.elements():
                out[al, be, ga] = (_l(o.mult[al, be], o.mult[s.product(al, be), ga])
                                   - _r(o.mult[be, ga], o.mult[al, s.product(be, ga)]))
    return from_residual("Omega-associative algebra", out, TRIPLE)


def validate_omega_bimodule(o, m):
    s = o.semigroup
    n = s.size
    da, dm = o.dim, m.module_dim
    if m.left.shape != (n, n, da, dm, dm) or m.right.shape != (n, n, dm, da, dm):
        raise ShapeError("Omega-bimodule shapes do not match the algebra")
    mu, L, R = o.mult, m.left, m.right
    reps = []
    r1 = zeros((n, n, n, da, da, dm, dm))
    r2 = zeros((n, n, n, da, dm, da, dm))
    r3 = zeros((n, n, n, dm, da, da, dm))
    for al in s.elements():
        for be in s.elements():
            ab = s.product(al, be)
            for ga in s.elements():
                bg = s.product(be, ga)
                # (a b) u = a (b u)
                r1[al, be, ga] = (np.einsum("abl,luk->abuk", mu[al, be], L[ab, ga])
                                  - np.einsum("bul,alk->abuk", L[be, ga], L[al, bg]))
                # (a u) b = a (u b)
                r2[al, be, ga] = (np.einsum("aul,lbk->aubk", L[al, be], R[ab, ga])
                                  - np.einsum("ubl,alk->aubk", R[be, ga], L[al, bg]))
                # (u a) b = u (a b)
                r3[al, be, ga] = (np.einsum("ual,lbk->uabk", R[al, be], R[ab, ga])
                                  - np.einsum("abl,ulk->uabk", mu[be, ga], R[al, bg]))
    reps.append(from_residual("(ab)u = a(bu)", r1, TRIPLE))
    reps.append(from_residual("(au)b = a(ub)", r2, TRIPLE))
    reps.append(from_residual("(ua)b = u(ab)", r3, TRIPLE))
    return combine("Omega-bimodule", reps)


def regular_omega_bimodule(o):
    return OmegaBimodule(o.mult.copy(), o.mult.copy())


def check_weighted_rb_family(r, a, lam):
    """R_a(x)R_b(y) = R_ab(R_a(x) y + x R_b(y) + lam xy)."""
    from .families import PAIR_LABELS, _pairs, _shape
    s = r.semigroup
    _shape(r, a.dim, a.dim, "weighted Rota-Baxter family")
    mu = a.mult
    out = zeros((s.size, s.size) + (a.dim,) * 3)
    for al, be, g in _pairs(s):
        Ra, Rb, Rg = r.maps[al], r.maps[be], r.maps[g]
        lhs = np.einsum("iu,jv,ijk->uvk", Ra, Rb, mu)
        inner = (np.einsum("iu,ivk->uvk", Ra, mu) + np.einsum("jv,ujk->uvk", Rb, mu)
                 + lam * mu)
        out[al, be] = lhs - np.einsum("kw,uvw->uvk", Rg, inner)
    return from_residual(f"Rota-Baxter family of weight {lam}", normalize(out), PAIR_LABELS)


# induced structures

def _o_ops(t, m):
    prec = np.stack([np.einsum("jv,ujk->uvk", t.maps[al], m.right) for al in t.semigroup.elements()])
    succ = np.stack([np.einsum("iu,ivk->uvk", t.maps[al], m.left) for al in t.semigroup.elements()])
    return normalize(prec), normalize(succ)


def dendriform_from_o_family(t, a, m):
    """u <_al v = u T_al(v), u >_al v = T_al(u) v."""
    if not check_twisted_o_family(t, a, m).ok:
        raise InvalidFamily("dendriform_from_o_family: not an O-operator family")
    prec, succ = _o_ops(t, m)
    return DendriformFamily(t.semigroup, prec, succ)


def weighted_rb_tridendriform(r, a, lam):
    if not check_weighted_rb_family(r, a, lam).ok:
        raise InvalidFamily("not a Rota-Baxter family of the given weight")
    prec, succ = _o_ops(r, alg.adjoint_bimodule(a))
    return TridendriformFamily(r.semigroup, prec, succ, normalize(lam * a.mult))


def induce_ns_family(kind, *args):
    """NS-family from one of four sources.

    kind = "twisted_o"   args (t, a, m, h)
           "nijenhuis"   args (n, a)
           "tridendriform" args (td,)
           "weighted_rb" args (r, a, lam)
    """
    if kind == "twisted_o":
        t, a, m, h = args
        if not check_twisted_o_family(t, a, m, h).ok:
            raise InvalidFamily("induce_ns_family: twisted family does not validate")
        s = t.semigroup
        prec, succ = _o_ops(t, m)
        vee = zeros((s.size, s.size) + (m.module_dim,) * 3)
        if h is not None:
            for al in s.elements():
                for be in s.elements():
                    vee[al, be] = np.einsum("iu,jv,ijk->uvk", t.maps[al], t.maps[be], h.h)
        return NSFamily(s, prec, succ, normalize(vee))
    if kind == "nijenhuis":
        n, a = args
        if not check_nijenhuis_family(n, a).ok:
            raise InvalidFamily("induce_ns_family: not a Nijenhuis family")
        s = n.semigroup
        prec, succ = _o_ops(n, alg.adjoint_bimodule(a))
        vee = zeros((s.size, s.size) + (a.dim,) * 3)
        for al in s.elements():
            for be in s.elements():
                vee[al, be] = -np.einsum("uvl,kl->uvk", a.mult, n.maps[s.product(al, be)])
        return NSFamily(s, prec, succ, normalize(vee))
    if kind == "tridendriform":
        (td,) = args
        if not validate_tridendriform_family(td).ok:
            raise InvalidFamily("induce_ns_family: not a tridendriform family")
        s = td.semigroup
        vee = np.stack([np.stack([td.odot] * s.size)] * s.size)
        return NSFamily(s, td.prec, td.succ, vee)
    if kind == "weighted_rb":
        r, a, lam = args
        return induce_ns_family("tridendriform", weighted_rb_tridendriform(r, a, lam))
    raise ValueError(f"unknown NS source {kind!r}")


def ns_family_to_ns_algebra(f, s=None):
    """NS-algebra on D (x) kOmega, basis index alpha*d + x."""
    s = s or f.semigroup
    if not validate_ns_family(f).ok:
        raise InvalidFamily("ns_family_to_ns_algebra: input does not validate")
    n, d = s.size, f.dim
    D = n * d
    prec, succ, vee = zeros((D, D, D)), zeros((D, D, D)), zeros((D, D, D))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            blk = (slice(al * d, (al + 1) * d), slice(be * d, (be + 1) * d), slice(g * d, (g + 1) * d))
            prec[blk] = f.prec[be]
            succ[blk] = f.succ[al]
            vee[blk] = f.vee[al, be]
    return NSAlgebra(prec, succ, vee)


def ns_algebra_from_twisted_operator(T, a, m, h=None):
    """u < v = u T(v), u > v = T(u) v, u vee v = H(Tu, Tv) for one operator."""
    T = exact_array(T)
    prec = np.einsum("jv,ujk->uvk", T, m.right)
    succ = np.einsum("iu,ivk->uvk", T, m.left)
    vee = zeros(prec.shape) if h is None else np.einsum("iu,jv,ijk->uvk", T, T, h.h)
    return NSAlgebra(normalize(prec), normalize(succ), normalize(vee))


def total_omega_assoc_from_ns(f):
    """x *_{al,be} y = x <_be y + x >_al y + x vee_{al,be} y."""
    f = as_ns_family(f)
    s = f.semigroup
    mult = zeros((s.size, s.size) + (f.dim,) * 3)
    for al in s.elements():
        for be in s.elements():
            mult[al, be] = f.prec[be] + f.succ[al] + f.vee[al, be]
    return OmegaAssocAlgebra(s, normalize(mult))


def omega_bimodule_from_twisted_family(t, a, m, h=None):
    """(M, *) and the bimodule (A, |>, <|) built from a twisted family.

    u |>_{al,be} x = T_al(u) x - T_albe(u x) - T_albe(H(T_al u, x))
    x <|_{al,be} u = x T_be(u) - T_albe(x u) - T_albe(H(x, T_be u))
    """
    if not check_twisted_o_family(t, a, m, h).ok:
        raise InvalidFamily("omega_bimodule_from_twisted_family: family does not validate")
    s = t.semigroup
    n, da, dm = s.size, a.dim, m.module_dim
    hh = h.h if h is not None else zeros((da, da, dm))
    star = zeros((n, n, dm, dm, dm))
    left = zeros((n, n, dm, da, da))
    right = zeros((n, n, da, dm, da))
    for al in s.elements():
        for be in s.elements():
            Ta, Tb, Tg = t.maps[al], t.maps[be], t.maps[s.product(al, be)]
            star[al, be] = (np.einsum("iu,ivk->uvk", Ta, m.left) + np.einsum("jv,ujk->uvk", Tb, m.right)
                            + np.einsum("iu,jv,ijk->uvk", Ta, Tb, hh))
            left[al, be] = (np.einsum("iu,ixk->uxk", Ta, a.mult)
                            - np.einsum("uxl,kl->uxk", m.right, Tg)
                            - np.einsum("iu,ixl,kl->uxk", Ta, hh, Tg))
            right[al, be] = (np.einsum("jv,xjk->xvk", Tb, a.mult)
                             - np.einsum("xvl,kl->xvk", m.left, Tg)
                             - np.einsum("jv,xjl,kl->xvk", Tb, hh, Tg))
    return (OmegaAssocAlgebra(s, normalize(star)),
            OmegaBimodule(normalize(left), normalize(right)))


# the total algebra of an NS-family and adjunction transport

def total_algebra_context(f):
    """((D (x) kOmega)_Tot, D as bimodule over it, H, Id family).

    Product (x (x) al)(y (x) be) = (x <_be y + x >_al y + x vee_{al,be} y) (x) albe,
    actions (x (x) al).y = x >_al y and y.(x (x) al) = y <_al x,
    H(x (x) al, y (x) be) = x vee_{al,be} y.
    """
    f = as_ns_family(f)
    s = f.semigroup
    n, d = s.size, f.dim
    D = n * d
    mu = zeros((D, D, D))
    left = zeros((D, d, d))
    right = zeros((d, D, d))
    h = zeros((D, D, d))
    for al in s.elements():
        left[al * d:(al + 1) * d] = f.succ[al]
        right[:, al * d:(al + 1) * d] = f.prec[al]
        for be in s.elements():
            g = s.product(al, be)
            blk = (slice(al * d, (al + 1) * d), slice(be * d, (be + 1) * d))
            mu[blk + (slice(g * d, (g + 1) * d),)] = f.prec[be] + f.succ[al] + f.vee[al, be]
            h[blk] = f.vee[al, be]
    ids = zeros((n, D, d))
    for al in s.elements():
        ids[al, al * d:(al + 1) * d, :] = identity(d)
    has_vee = not is_zero(f.vee)
    return (alg.Algebra(normalize(mu)), alg.Bimodule(left, right),
            alg.Cocycle2(normalize(h)) if has_vee else None, OperatorFamily(s, ids))


def check_ns_morphism(fmap, src, dst):
    """f(x op y) = f(x) op' f(y) for all operations of two NS-families."""
    src, dst = as_ns_family(src), as_ns_family(dst)
    s = src.semigroup
    F = exact_array(fmap)
    reps = []

    def push(op_src, op_dst, name, witness):
        lhs = np.einsum("xyl,kl->xyk", op_src, F)
        rhs = np.einsum("ix,jy,ijk->xyk", F, F, op_dst)
        rep = from_residual(name, lhs - rhs, ("x", "y", "coord"))
        if not rep.ok:
            rep.witness.update(witness)
        reps.append(rep)

    for al in s.elements():
        push(src.prec[al], dst.prec[al], "f(x < y)", {"alpha": al})
        push(src.succ[al], dst.succ[al], "f(x > y)", {"alpha": al})
        for be in s.elements():
            push(src.vee[al, be], dst.vee[al, be], "f(x vee y)", {"alpha": al, "beta": be})
    return combine("NS-family morphism", reps)


def check_family_morphism(phi, psi, src, dst):
    """Morphism of twisted families from src = (T, A, M, H) to dst = (T', A', M', H').

    phi : A -> A' algebra map, psi : M -> M' with psi(a u) = phi(a) psi(u),
    psi(u a) = psi(u) phi(a), psi H = H'(phi, phi) and phi T_al = T'_al psi.
    """
    T, A, M, H = src
    T2, A2, M2, H2 = dst
    phi, psi = exact_array(phi), exact_array(psi)
    reps = []
    lhs = np.einsum("xyl,kl->xyk", A.mult, phi)
    rhs = np.einsum("ix,jy,ijk->xyk", phi, phi, A2.mult)
    reps.append(from_residual("phi(xy) = phi(x)phi(y)", lhs - rhs, ("x", "y", "coord")))
    lhs = np.einsum("xul,kl->xuk", M.left, psi)
    rhs = np.einsum("ix,ju,ijk->xuk", phi, psi, M2.left)
    reps.append(from_residual("psi(a u) = phi(a) psi(u)", lhs - rhs, ("x", "u", "coord")))
    lhs = np.einsum("uxl,kl->uxk", M.right, psi)
    rhs = np.einsum("ju,ix,jik->uxk", psi, phi, M2.right)
    reps.append(from_residual("psi(u a) = psi(u) phi(a)", lhs - rhs, ("u", "x", "coord")))
    hz = H.h if H is not None else zeros((A.dim, A.dim, M.module_dim))
    h2 = H2.h if H2 is not None else zeros((A2.dim, A2.dim, M2.module_dim))
    lhs = np.einsum("xyl,kl->xyk", hz, psi)
    rhs = np.einsum("ix,jy,ijk->xyk", phi, phi, h2)
    reps.append(from_residual("psi H = H'(phi, phi)", lhs - rhs, ("x", "y", "coord")))
    for al in T.semigroup.elements():
        rep = from_residual("phi T_al = T'_al psi", phi @ T.maps[al] - T2.maps[al] @ psi, ("row", "u"))
        if not rep.ok:
            rep.witness["alpha"] = al
        reps.append(rep)
    return combine("twisted family morphism", reps)


def transport_map(f, t):
    """T^f(x (x) al) = T_al(f(x)), as a matrix on D (x) kOmega."""
    F = exact_array(f)
    s = t.semigroup
    d = F.shape[1]
    return normalize(np.concatenate([t.maps[al] @ F for al in s.elements()], axis=1))


def adjunction_transport(d, ctx, f):
    """Morphism pair (T^f, f) from the total context of d to ctx = (T, A, M, H).

    Raises InvalidFamily naming the first violated equation if f is not a
    morphism into the NS-family induced on M.
    """
    T, A, M, H = ctx
    induced = induce_ns_family("twisted_o", T, A, M, H)
    rep = check_ns_morphism(f, d, induced)
    if not rep.ok:
        raise InvalidFamily(f"adjunction_transport: f is not a morphism ({rep.detail}, {rep.witness})")
    src = total_algebra_context(d)
    tot, dmod, dh, ids = src
    phi = transport_map(f, T)
    rep = check_family_morphism(phi, f, (ids, tot, dmod, dh), ctx)
    if not rep.ok:
        raise InvalidFamily(f"adjunction_transport: transported pair fails ({rep.detail}, {rep.witness})")
    return phi, exact_array(f)


def restrict_morphism(phi, psi):
    """(phi, psi) -> psi, the inverse direction of the adjunction bijection."""
    return psi


def ns_family_to_json(f):
    from .exact_linalg import to_jsonable
    s = f.semigroup
    return {"type": "ns", "dim": f.dim,
            "prec": {str(a): to_jsonable(f.prec[a]) for a in s.elements()},
            "succ": {str(a): to_jsonable(f.succ[a]) for a in s.elements()},
            "vee": {f"{a},{b}": to_jsonable(f.vee[a, b]) for a in s.elements() for b in s.elements()}}
