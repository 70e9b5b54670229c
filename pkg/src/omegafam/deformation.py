"""Truncated formal deformations of twisted O-operator families and NS-families.

A power series X(t) = X_0 + t X_1 + ... + t^N X_N of matrices is an object
array of shape (N+1, rows, cols).  Everything is exact and computed mod t^(N+1).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

from .cohomology import NSFamilyComplex, TwistedFamilyComplex, delta_nsfam, delta_twooperf, pi_cochain
from .exact_linalg import ShapeError, exact_array, identity, is_zero, normalize, zeros
from .families import InvalidFamily, OperatorFamily, check_twisted_o_family
from .family_algebras import NSFamily, as_ns_family, ns_axiom_residuals, validate_ns_family
from .report import from_residual


class DeformationError(ValueError):
    pass


# power series of matrices

def ps_mul(X, Y):
    N = min(X.shape[0], Y.shape[0]) - 1
    out = zeros((N + 1, X.shape[1], Y.shape[2]))
    for n in range(N + 1):
        for i in range(n + 1):
            out[n] = out[n] + X[i].dot(Y[n - i])
    return normalize(out)


def ps_inv(X):
    """Inverse of a series whose constant term is the identity."""
    N, r, c = X.shape[0] - 1, X.shape[1], X.shape[2]
    if r != c or not is_zero(X[0] - identity(r)):
        raise ShapeError("ps_inv needs a square series with identity constant term")
    out = zeros(X.shape)
    out[0] = identity(r)
    for n in range(1, N + 1):
        acc = zeros((r, r))
        for i in range(1, n + 1):
            acc = acc + X[i].dot(out[n - i])
        out[n] = -acc
    return normalize(out)


def ps_exp(D, N):
    """exp(tD) mod t^(N+1) for a constant matrix D."""
    d = D.shape[0]
    out = zeros((N + 1, d, d))
    power = identity(d)
    for k in range(N + 1):
        out[k] = normalize(power * Fraction(1, factorial(k)))
        power = power.dot(D)
    return normalize(out)


def ps_identity(d, N):
    out = zeros((N + 1, d, d))
    out[0] = identity(d)
    return out


# family deformations

@dataclass(frozen=True, eq=False)
class TruncatedFamilyDeformation:
    terms: tuple          # OperatorFamily T^(0), ..., T^(N)
    algebra: object
    bimodule: object
    cocycle: object = None

    @property
    def order(self):
        return len(self.terms) - 1

    @property
    def semigroup(self):
        return self.terms[0].semigroup

    @property
    def base(self):
        return self.terms[0]

    def series(self, al):
        return np.stack([t.maps[al] for t in self.terms])


def family_deformation(terms, a, m, h=None):
    terms = tuple(terms)
    if not terms:
        raise DeformationError("a deformation needs at least the base term")
    s = terms[0].semigroup
    for t in terms:
        if t.maps.shape != terms[0].maps.shape or t.semigroup.table != s.table:
            raise ShapeError("deformation terms must share semigroup and shape")
    if not check_twisted_o_family(terms[0], a, m, h).ok:
        raise DeformationError("base family does not validate")
    return TruncatedFamilyDeformation(terms, a, m, h)


def constant_deformation(t, a, m, h=None, order=2):
    z = OperatorFamily(t.semigroup, zeros(t.maps.shape))
    return family_deformation([t] + [z] * order, a, m, h)


def deformation_residual(d, n):
    """Coefficient of t^n of the deformation equation, over (alpha, beta, u, v, coord)."""
    s = d.semigroup
    mu, L, R = d.algebra.mult, d.bimodule.left, d.bimodule.right
    h = d.cocycle.h if d.cocycle is not None else None
    T = [t.maps for t in d.terms]
    dA, dM = d.algebra.dim, d.bimodule.module_dim
    out = zeros((s.size, s.size, dM, dM, dA))
    for al in s.elements():
        for be in s.elements():
            g = s.product(al, be)
            acc = zeros((dM, dM, dA))
            for i in range(n + 1):
                j = n - i
                acc = acc + np.einsum("iu,jv,ijk->uvk", T[i][al], T[j][be], mu)
                inner = np.einsum("iu,ivl->uvl", T[j][al], L) + np.einsum("jv,ujl->uvl", T[j][be], R)
                acc = acc - np.einsum("uvl,kl->uvk", inner, T[i][g])
                if h is not None:
                    for jj in range(j + 1):
                        kk = j - jj
                        hv = np.einsum("iu,jv,ijl->uvl", T[jj][al], T[kk][be], h)
                        acc = acc - np.einsum("uvl,kl->uvk", hv, T[i][g])
            out[al, be] = acc
    return normalize(out)


def check_family_deformation(d):
    """One report per order 0..N; raises if the base itself fails."""
    reports = []
    for n in range(d.order + 1):
        rep = from_residual(f"deformation equation at order {n}", deformation_residual(d, n),
                            ("alpha", "beta", "u", "v", "coord"))
        if n == 0 and not rep.ok:
            raise DeformationError(f"base family fails: {rep.witness}")
        reports.append(rep)
    return reports


def family_cochain(t):
    """An operator family as a degree-1 twisted-family cochain (alpha, u, coord)."""
    return np.transpose(t.maps, (0, 2, 1)).copy()


def cochain_family(s, c):
    return OperatorFamily(s, normalize(np.transpose(np.asarray(c, dtype=object), (0, 2, 1)).copy()))


def twisted_complex_of(d):
    return TwistedFamilyComplex(d.base, d.algebra, d.bimodule, d.cocycle)


def infinitesimal_cocycle_check(d):
    """delta(order-1 term) == 0, for family or NS deformations valid to order 1."""
    if isinstance(d, TruncatedNSDeformation):
        if d.order < 1:
            return True
        if not check_ns_deformation(d)[1].ok:
            raise DeformationError("deformation is not valid to order 1")
        out = delta_nsfam(pi_cochain(d.terms[1]), ns_complex_of(d), 2)
        return all(is_zero(v) for v in out.values())
    if d.order < 1:
        return True
    if not check_family_deformation(d)[1].ok:
        raise DeformationError("deformation is not valid to order 1")
    return is_zero(delta_twooperf(family_cochain(d.terms[1]), twisted_complex_of(d), 1))


# equivalences

@dataclass(frozen=True, eq=False)
class EquivalenceData:
    """phi^t on A and psi^t_alpha on M, as full truncated series.

    phi: (N+1, dA, dA); psi: (|Omega|, N+1, dM, dM).  The order-1 terms are
    fixed by theta; higher terms are free data.
    """
    theta: np.ndarray
    phi: np.ndarray
    psi: np.ndarray

    @property
    def order(self):
        return self.phi.shape[0] - 1


def inner_derivation(theta, a, m, h=None):
    """The derivation [(theta, 0), -] of A x_H M as a block matrix on A + M."""
    dA, dM = a.dim, m.module_dim
    D = zeros((dA + dM, dA + dM))
    # A block: x -> theta x - x theta
    D[:dA, :dA] = (np.einsum("i,ixk->kx", theta, a.mult) - np.einsum("i,xik->kx", theta, a.mult))
    # M block: u -> theta u - u theta
    D[dA:, dA:] = (np.einsum("i,iuk->ku", theta, m.left) - np.einsum("i,uik->ku", theta, m.right))
    if h is not None:
        # A -> M: x -> H(theta, x) - H(x, theta)
        D[dA:, :dA] = (np.einsum("i,ixk->kx", theta, h.h) - np.einsum("i,xik->kx", theta, h.h))
    return normalize(D)


def order_one_terms(theta, t, a, m, h=None):
    """(phi_1, [psi_1 per alpha]) from theta."""
    dA = a.dim
    D = inner_derivation(theta, a, m, h)
    phi1 = D[:dA, :dA]
    psi1 = [normalize(D[dA:, dA:] + D[dA:, :dA].dot(t.maps[al])) for al in t.semigroup.elements()]
    return phi1, psi1


def equivalence(theta, d, phi_higher=None, psi_higher=None):
    """EquivalenceData with order-1 terms from theta and optional higher terms.

    phi_higher: {i: matrix on A}; psi_higher: {i: matrix on M or list per alpha}.
    """
    a, m, h, t = d.algebra, d.bimodule, d.cocycle, d.base
    theta = exact_array(theta, (a.dim,))
    N, s = d.order, d.semigroup
    phi = ps_identity(a.dim, N)
    psi = np.stack([ps_identity(m.module_dim, N) for _ in s.elements()])
    if N >= 1:
        phi1, psi1 = order_one_terms(theta, t, a, m, h)
        phi[1] = phi1
        for al in s.elements():
            psi[al, 1] = psi1[al]
    for i, mat in (phi_higher or {}).items():
        if not 2 <= i <= N:
            raise ShapeError(f"higher term index {i} outside 2..{N}")
        phi[i] = exact_array(mat, (a.dim, a.dim))
    for i, mat in (psi_higher or {}).items():
        if not 2 <= i <= N:
            raise ShapeError(f"higher term index {i} outside 2..{N}")
        mats = exact_array(mat)
        for al in s.elements():
            psi[al, i] = mats[al] if mats.ndim == 3 else mats
    return EquivalenceData(theta, normalize(phi), normalize(psi))


def gauge_equivalence(theta, d):
    """The equivalence generated by exp(t D) with D the inner derivation of theta.

    exp(tD) is an automorphism of A x_H M, so it carries the graph of T^t onto
    the graph of another deformation; its order-1 terms are those fixed by theta.
    """
    a, m, h = d.algebra, d.bimodule, d.cocycle
    theta = exact_array(theta, (a.dim,))
    N, s, dA = d.order, d.semigroup, a.dim
    E = ps_exp(inner_derivation(theta, a, m, h), N)
    psi = []
    for al in s.elements():
        G = np.concatenate([d.series(al), np.stack([identity(m.module_dim)] * (N + 1))], axis=1)
        G[1:, dA:] = 0
        psi.append(ps_mul(E, G)[:, dA:])
    return EquivalenceData(theta, normalize(E[:, :dA, :dA].copy()), normalize(np.stack(psi)))


def apply_equivalence(d, e):
    """T-bar_alpha = phi^t o T^t_alpha o (psi^t_alpha)^(-1) mod t^(N+1)."""
    if e.order != d.order:
        raise ShapeError("equivalence and deformation orders differ")
    s = d.semigroup
    new = []
    for al in s.elements():
        new.append(ps_mul(ps_mul(e.phi, d.series(al)), ps_inv(e.psi[al])))
    new = np.stack(new)
    terms = [OperatorFamily(s, normalize(new[:, i].copy())) for i in range(d.order + 1)]
    return TruncatedFamilyDeformation(tuple(terms), d.algebra, d.bimodule, d.cocycle)


def check_intertwining(d, e, dbar):
    """phi^t T^t_alpha = T-bar^t_alpha psi^t_alpha to every order."""
    s = d.semigroup
    res = np.stack([ps_mul(e.phi, d.series(al)) - ps_mul(dbar.series(al), e.psi[al])
                    for al in s.elements()])
    return from_residual("equivalence intertwining", res, ("alpha", "order", "row", "u"))


def compose_equivalences(e1, e2):
    """The equivalence 'e1 then e2': phi = phi2 phi1, psi = psi2 psi1."""
    phi = ps_mul(e2.phi, e1.phi)
    psi = np.stack([ps_mul(e2.psi[al], e1.psi[al]) for al in range(e1.psi.shape[0])])
    return EquivalenceData(normalize(e1.theta + e2.theta), phi, psi)


def coboundary_family(theta, d):
    """delta_TwOoperf(theta) as an operator family."""
    c = delta_twooperf(exact_array(theta, (d.algebra.dim,)), twisted_complex_of(d), 0)
    return cochain_family(d.semigroup, c)


def trivialization_step(d, theta):
    """Transport d by the gauge equivalence of theta; needs delta(theta) = T^(1)."""
    if d.order < 1:
        return d
    target = coboundary_family(theta, d)
    if not is_zero(target.maps - d.terms[1].maps):
        raise DeformationError("theta does not cobound the order-1 term")
    out = apply_equivalence(d, gauge_equivalence(theta, d))
    if not is_zero(out.terms[1].maps):
        raise DeformationError("order-1 term survived the trivialization step")
    return out


def deformation_from_json(obj, s, a, m, h=None):
    from .families import family
    terms = [family(s, t["maps"] if isinstance(t, dict) else t) for t in obj["terms"]]
    if int(obj.get("order", len(terms) - 1)) != len(terms) - 1:
        raise ShapeError("declared order does not match the number of terms")
    return family_deformation(terms, a, m, h)


def deformation_to_json(d):
    from .families import family_to_json
    return {"order": d.order, "terms": [family_to_json(t) for t in d.terms]}


# NS-family deformations

@dataclass(frozen=True, eq=False)
class TruncatedNSDeformation:
    terms: tuple   # NSFamily pi^0, ..., pi^N

    @property
    def order(self):
        return len(self.terms) - 1

    @property
    def base(self):
        return self.terms[0]


def ns_deformation(terms):
    terms = tuple(as_ns_family(t) for t in terms)
    if not validate_ns_family(terms[0]).ok:
        raise DeformationError("base NS-family does not validate")
    return TruncatedNSDeformation(terms)


def ns_complex_of(d):
    return NSFamilyComplex(d.base)


def ns_deformation_residual(d, n):
    res = None
    for i in range(n + 1):
        r = ns_axiom_residuals(d.terms[i], d.terms[n - i])
        res = r if res is None else res + r
    return normalize(res)


def check_ns_deformation(d):
    """Per-order reports; at order 1 the verdict is cross-checked against
    delta_NSfam(pi^1) = 0."""
    reports = []
    for n in range(d.order + 1):
        rep = from_residual(f"NS deformation at order {n}", ns_deformation_residual(d, n),
                            ("axiom", "alpha", "beta", "gamma", "x", "y", "z", "coord"))
        if n == 0 and not rep.ok:
            raise DeformationError(f"base NS-family fails: {rep.witness}")
        if n == 1:
            dpi = delta_nsfam(pi_cochain(d.terms[1]), ns_complex_of(d), 2)
            closed = all(is_zero(v) for v in dpi.values())
            rep.extra["delta_pi1_zero"] = closed
            if closed != rep.ok:
                raise DeformationError("order-1 equation and delta(pi^1) = 0 disagree")
        reports.append(rep)
    return reports


def transport_ns_deformation(d, psi_terms):
    """op-bar(x, y) = psi(op(psi^-1 x, psi^-1 y)) with psi^t = id + t psi_1 + ...

    psi_terms lists psi_1, ..., psi_k (k <= N), single maps on D.
    """
    N, dim = d.order, d.base.dim
    P = ps_identity(dim, N)
    for i, mat in enumerate(psi_terms, start=1):
        if i <= N:
            P[i] = exact_array(mat, (dim, dim))
    Q = ps_inv(P)
    s = d.base.semigroup

    def series(get):
        return np.stack([get(t) for t in d.terms])

    def conj(S):
        # S[n, x, y, k]; out = sum P[a] S[b](Q[c] x, Q[e] y) with a+b+c+e = n
        out = zeros(S.shape)
        for n in range(N + 1):
            acc = zeros(S.shape[1:])
            for a in range(n + 1):
                for b in range(n - a + 1):
                    for c in range(n - a - b + 1):
                        e = n - a - b - c
                        acc = acc + np.einsum("ix,jy,ijl,kl->xyk", Q[c], Q[e], S[b], P[a])
            out[n] = acc
        return normalize(out)

    prec = np.stack([conj(series(lambda t, al=al: t.prec[al])) for al in s.elements()], axis=1)
    succ = np.stack([conj(series(lambda t, al=al: t.succ[al])) for al in s.elements()], axis=1)
    vee = np.stack([np.stack([conj(series(lambda t, al=al, be=be: t.vee[al, be]))
                              for be in s.elements()], axis=1) for al in s.elements()], axis=1)
    terms = [NSFamily(s, prec[n], succ[n], vee[n]) for n in range(N + 1)]
    return TruncatedNSDeformation(tuple(terms))


def ns_family_from_cochain(s, c):
    """Inverse of pi_cochain: components [1], [2], [3] -> (prec, succ, vee)."""
    return NSFamily(s, normalize(np.asarray(c[1], dtype=object)), normalize(np.asarray(c[2], dtype=object)),
                    normalize(np.asarray(c[3], dtype=object)))


def ns_map_coboundary(psi1, f):
    """delta_NSfam of a linear map D -> D (matrix convention) as an NSFamily."""
    f = as_ns_family(f)
    psi1 = exact_array(psi1, (f.dim, f.dim))
    out = delta_nsfam({1: psi1.T.copy()}, NSFamilyComplex(f), 1)
    return ns_family_from_cochain(f.semigroup, out)
