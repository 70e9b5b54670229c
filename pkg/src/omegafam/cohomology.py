"""Coboundary operators of the three cochain complexes and their cohomology.

Cochains are numpy object arrays.  Every coboundary works on a batch: the
leading axis of the input runs over several cochains at once, which is how
the matrices of delta are assembled (apply delta to the identity batch).

Layouts (after the batch axis):

    Omega-Hochschild, degree n   (|Omega|,)*n + (dim A,)*n + (dim M,)
    twisted family,   degree n   (|Omega|,)*n + (dim M,)*n + (dim A,)
    NS-family,        degree n   dict r -> array; component r <= n is keyed by
                                 Omega^(n-1) (alpha_r dropped), component n+1
                                 (n >= 2) by Omega^n; each followed by
                                 (dim,)*n + (dim,)
"""

from dataclasses import dataclass
import itertools
import random
from fractions import Fraction

import numpy as np

from .exact_linalg import is_zero, normalize, rank, zeros
from .family_algebras import OmegaAssocAlgebra, OmegaBimodule, as_ns_family, validate_ns_family

LETTERS = "abcdefghijklmnopqrstuvwxyz"


class ComplexError(ValueError):
    pass


def _ein(spec, *ops):
    return np.einsum(spec, *ops)


def _replace_pair(G, prod, i, n):
    """G(a_1, ..., a_{i-1}, a_i . a_{i+1}, ..., a_{n+1}).

    G has axes (batch, a_1..a_n, target); prod[x, y, c] is the bilinear map
    merging arguments i, i+1 (1-based).  Result axes (batch, a_1..a_{n+1}, target).
    """
    args = LETTERS[:n + 1]
    c = "Z"
    g_args = args[:i - 1] + c + args[i + 1:]
    spec = f"Y{g_args}W,{args[i - 1]}{args[i]}{c}->Y{args}W"
    return _ein(spec, G, prod)


# Omega-Hochschild complex

@dataclass(frozen=True, eq=False)
class OmegaHochComplex:
    algebra: OmegaAssocAlgebra
    bimodule: OmegaBimodule
    tag = "omega_hoch"

    @property
    def semigroup(self):
        return self.algebra.semigroup

    @property
    def start(self):
        return 0 if self.semigroup.unit is not None else 1

    def shape(self, n):
        k = self.semigroup.size
        return (k,) * n + (self.algebra.dim,) * n + (self.bimodule.module_dim,)

    def delta(self, F, n):
        s = self.semigroup
        mu, L, R = self.algebra.mult, self.bimodule.left, self.bimodule.right
        B = F.shape[0]
        out = zeros((B,) + self.shape(n + 1))
        if n == 0:
            if s.unit is None:
                raise ComplexError("degree 0 needs a unital semigroup")
            e = s.unit
            for al in s.elements():
                # a ._{al,1} u - u ._{1,al} a
                out[:, al] = _ein("Yu,auk->Yak", F, L[al, e]) - _ein("Yu,uak->Yak", F, R[e, al])
            return normalize(out)
        args = LETTERS[:n + 1]
        for alphas in itertools.product(s.elements(), repeat=n + 1):
            acc = zeros((B,) + (self.algebra.dim,) * (n + 1) + (self.bimodule.module_dim,))
            G = F[(slice(None),) + alphas[1:]]
            acc = acc + _ein(f"Y{args[1:]}M,{args[0]}MK->Y{args}K", G, L[alphas[0], s.prod(alphas[1:])])
            for i in range(1, n + 1):
                merged = alphas[:i - 1] + (s.product(alphas[i - 1], alphas[i]),) + alphas[i + 1:]
                G = F[(slice(None),) + merged]
                acc = acc + (-1) ** i * _replace_pair(G, mu[alphas[i - 1], alphas[i]], i, n)
            G = F[(slice(None),) + alphas[:n]]
            acc = acc + (-1) ** (n + 1) * _ein(f"Y{args[:n]}M,M{args[n]}K->Y{args}K",
                                                 G, R[s.prod(alphas[:n]), alphas[n]])
            out[(slice(None),) + alphas] = acc
        return normalize(out)


# twisted O-operator family complex

@dataclass(frozen=True, eq=False)
class TwistedFamilyComplex:
    family: object
    algebra: object
    bimodule: object
    cocycle: object = None
    tag = "twooperf"

    @property
    def semigroup(self):
        return self.family.semigroup

    @property
    def start(self):
        return 0 if self.semigroup.unit is not None else 1

    def shape(self, n):
        k = self.semigroup.size
        return (k,) * n + (self.bimodule.module_dim,) * n + (self.algebra.dim,)

    def _h(self):
        if self.cocycle is None:
            return zeros((self.algebra.dim, self.algebra.dim, self.bimodule.module_dim))
        return self.cocycle.h

    def star(self, al, be):
        """u *_{al,be} v = T_al(u) v + u T_be(v) + H(T_al u, T_be v) on M."""
        T, L, R, h = self.family.maps, self.bimodule.left, self.bimodule.right, self._h()
        return (_ein("iu,ivk->uvk", T[al], L) + _ein("jv,ujk->uvk", T[be], R)
                + _ein("iu,jv,ijk->uvk", T[al], T[be], h))

    def delta(self, F, n):
        s = self.semigroup
        T = self.family.maps
        mu, L, R, h = self.algebra.mult, self.bimodule.left, self.bimodule.right, self._h()
        B = F.shape[0]
        out = zeros((B,) + self.shape(n + 1))
        if n == 0:
            for al in s.elements():
                Ta = T[al]
                out[:, al] = (_ein("iu,Ya,iak->Yuk", Ta, F, mu)
                              - _ein("Ya,ual,kl->Yuk", F, R, Ta)
                              - _ein("iu,Ya,ial,kl->Yuk", Ta, F, h, Ta)
                              - _ein("Ya,iu,aik->Yuk", F, Ta, mu)
                              + _ein("Ya,aul,kl->Yuk", F, L, Ta)
                              + _ein("Ya,iu,ail,kl->Yuk", F, Ta, h, Ta))
            return normalize(out)
        args = LETTERS[:n + 1]
        stars = {(al, be): self.star(al, be) for al in s.elements() for be in s.elements()}
        for alphas in itertools.product(s.elements(), repeat=n + 1):
            P = T[s.prod(alphas)]
            T1, Tl = T[alphas[0]], T[alphas[n]]
            u1, rest = args[0], args[1:]
            G = F[(slice(None),) + alphas[1:]]
            acc = (_ein(f"I{u1},Y{rest}X,IXK->Y{args}K", T1, G, mu)
                   - _ein(f"{u1}XL,Y{rest}X,KL->Y{args}K", R, G, P)
                   - _ein(f"I{u1},Y{rest}X,IXL,KL->Y{args}K", T1, G, h, P))
            for i in range(1, n + 1):
                merged = alphas[:i - 1] + (s.product(alphas[i - 1], alphas[i]),) + alphas[i + 1:]
                G = F[(slice(None),) + merged]
                acc = acc + (-1) ** i * _replace_pair(G, stars[alphas[i - 1], alphas[i]], i, n)
            G = F[(slice(None),) + alphas[:n]]
            first, ul = args[:n], args[n]
            last = (_ein(f"Y{first}X,J{ul},XJK->Y{args}K", G, Tl, mu)
                    - _ein(f"Y{first}X,X{ul}L,KL->Y{args}K", G, L, P)
                    - _ein(f"Y{first}X,J{ul},XJL,KL->Y{args}K", G, Tl, h, P))
            acc = acc + (-1) ** (n + 1) * last
            out[(slice(None),) + alphas] = acc
        return normalize(out)


# NS-family complex

def labels(n):
    """The label set C_n as integers: {1} for n = 1, {1, ..., n+1} otherwise."""
    return (1,) if n == 1 else tuple(range(1, n + 2))


def index_maps(m, i, n, r):
    """(R_{m;i,n}([r]), S_{m;i,n}([r])) for [r] in C_{m+n-1} minus its top label.

    S is returned as a tuple of labels of C_n standing for their formal sum.
    """
    if not (1 <= i <= m):
        raise ValueError(f"need 1 <= i <= m, got i={i}, m={m}")
    top = m + n
    if not (1 <= r < top):
        raise ValueError(f"label [{r}] is outside C_{m + n - 1} minus [{top}]")
    full = labels(n)
    if r <= i - 1:
        return r, full
    if r <= i + n - 1:
        return i, (r - i + 1,)
    return r - n + 1, full


@dataclass(frozen=True, eq=False)
class NSFamilyComplex:
    ns: object
    dendriform: bool = False
    tag = "nsfam"
    start = 1

    @property
    def semigroup(self):
        return self.ns.semigroup

    def components(self, n):
        top = n + 1 if (n >= 2 and not self.dendriform) else n
        return tuple(range(1, top + 1)) if n >= 2 else (1,)

    def comp_shape(self, n, r):
        k, d = self.semigroup.size, self.ns.dim
        lead = n - 1 if r <= n else n
        return (k,) * lead + (d,) * (n + 1)

    def dim(self, n):
        return sum(int(np.prod(self.comp_shape(n, r))) for r in self.components(n))

    def flatten(self, comps, n):
        B = next(iter(comps.values())).shape[0]
        return np.concatenate([comps[r].reshape(B, -1) for r in self.components(n)], axis=1)

    def unflatten(self, X, n):
        out, pos = {}, 0
        for r in self.components(n):
            shp = self.comp_shape(n, r)
            size = int(np.prod(shp))
            out[r] = X[:, pos:pos + size].reshape((X.shape[0],) + shp)
            pos += size
        return out

    # access helpers

    def _pi(self, label, al, be):
        f = self.ns
        if label == 1:
            return f.prec[be]
        if label == 2:
            return f.succ[al]
        return f.vee[al, be]

    def _pi_sum(self, labs, al, be):
        return sum(self._pi(l, al, be) for l in labs)

    def _comp(self, F, n, r, alphas, B):
        d = self.ns.dim
        if r == n + 1 and (n == 1 or self.dendriform):
            return zeros((B,) + (d,) * (n + 1))
        if r <= n:
            key = alphas[:r - 1] + alphas[r:]
        else:
            key = alphas
        return F[r][(slice(None),) + tuple(key)]

    def _comp_sum(self, F, n, labs, alphas, B):
        return sum(self._comp(F, n, r, alphas, B) for r in labs)

    def delta_full(self, F, n):
        """delta as arrays over the full Omega^(n+1) index, per output label."""
        s = self.semigroup
        d = self.ns.dim
        B = next(iter(F.values())).shape[0]
        args = LETTERS[:n + 1]
        rest = args[1:]
        first = args[:n]
        out = {r: zeros((B,) + (s.size,) * (n + 1) + (d,) * (n + 2)) for r in range(1, n + 3)}
        allf = labels(n)
        for alphas in itertools.product(s.elements(), repeat=n + 1):
            a1, an1 = alphas[0], alphas[n]
            p_rest, p_first = s.prod(alphas[1:]), s.prod(alphas[:n])
            merged = [alphas[:i - 1] + (s.product(alphas[i - 1], alphas[i]),) + alphas[i + 1:]
                      for i in range(1, n + 1)]

            def outer_left(op, G):
                # x_1 op G(x_2, ..., x_{n+1})
                return _ein(f"{args[0]}CK,Y{rest}C->Y{args}K", op, G)

            def outer_right(G, op):
                # G(x_1, ..., x_n) op x_{n+1}
                return _ein(f"Y{first}C,C{args[n]}K->Y{args}K", G, op)

            for r in range(1, n + 2):
                Rr, Ss = index_maps(2, 2, n, r)
                acc = outer_left(self._pi(Rr, a1, p_rest), self._comp_sum(F, n, Ss, alphas[1:], B))
                for i in range(1, n + 1):
                    Ri, Si = index_maps(n, i, 2, r)
                    G = self._comp(F, n, Ri, merged[i - 1], B)
                    acc = acc + (-1) ** i * _replace_pair(
                        G, self._pi_sum(Si, alphas[i - 1], alphas[i]), i, n)
                Rl, Sl = index_maps(2, 1, n, r)
                acc = acc + (-1) ** (n + 1) * outer_right(
                    self._comp_sum(F, n, Sl, alphas[:n], B), self._pi(Rl, p_first, an1))
                out[r][(slice(None),) + alphas] = acc
            # top label [n+2]
            top = self._comp(F, n, n + 1, alphas[1:], B)
            acc = (outer_left(self._pi(2, a1, p_rest), top)
                   + outer_left(self._pi(3, a1, p_rest), self._comp_sum(F, n, allf, alphas[1:], B)))
            for i in range(1, n + 1):
                Gi = self._comp(F, n, i, merged[i - 1], B)
                Gt = self._comp(F, n, n + 1, merged[i - 1], B)
                acc = acc + (-1) ** i * (
                    _replace_pair(Gi, self._pi(3, alphas[i - 1], alphas[i]), i, n)
                    + _replace_pair(Gt, self._pi_sum((1, 2, 3), alphas[i - 1], alphas[i]), i, n))
            top = self._comp(F, n, n + 1, alphas[:n], B)
            acc = acc + (-1) ** (n + 1) * (
                outer_right(top, self._pi(1, p_first, an1))
                + outer_right(self._comp_sum(F, n, allf, alphas[:n], B), self._pi(3, p_first, an1)))
            out[n + 2][(slice(None),) + alphas] = acc
        return {r: normalize(v) for r, v in out.items()}

    def delta_components(self, F, n):
        """delta into the structured storage of C^(n+1), checking that every
        non-top label is independent of its dropped index."""
        full = self.delta_full(F, n)
        m = n + 1
        out = {}
        for r in range(1, m + 2):
            arr = full[r]
            if r <= m:
                axis = r  # batch axis is 0, alpha_r sits at axis r
                ref = np.take(arr, 0, axis=axis)
                for al in range(1, self.semigroup.size):
                    if not is_zero(np.take(arr, al, axis=axis) - ref):
                        raise ComplexError(f"component [{r}] of delta depends on alpha_{r}")
                out[r] = ref
            else:
                out[r] = arr
        if self.dendriform:
            if not is_zero(out[m + 1]):
                raise ComplexError("dendriform subcomplex is not closed")
            del out[m + 1]
        return out

    def delta(self, X, n):
        """delta on flattened cochains (batch, dim C^n) -> (batch, dim C^(n+1))."""
        out = self.delta_components(self.unflatten(X, n), n)
        return self.flatten(out, n + 1)


# generic complex operations

def _flat_dim(ctx, n):
    if isinstance(ctx, NSFamilyComplex):
        return ctx.dim(n)
    return int(np.prod(ctx.shape(n)))


def apply_delta(ctx, X, n):
    """delta on a batch of flattened cochains."""
    if isinstance(ctx, NSFamilyComplex):
        return ctx.delta(X, n)
    B = X.shape[0]
    F = X.reshape((B,) + ctx.shape(n))
    return ctx.delta(F, n).reshape(B, -1)


def _identity_batch(dim):
    E = zeros((dim, dim))
    for i in range(dim):
        E[i, i] = 1
    return E


def delta_matrix(ctx, n):
    """Matrix of delta : C^n -> C^(n+1) on the canonical bases."""
    dim = _flat_dim(ctx, n)
    if dim == 0:
        return zeros((_flat_dim(ctx, n + 1), 0))
    return apply_delta(ctx, _identity_batch(dim), n).T.copy()


def cochain_dim(ctx, n):
    return _flat_dim(ctx, n)


def cohomology_table(ctx, n_max, limit=2_000_000):
    """Per degree: dim C^n, rank delta_n, dim Z^n, dim B^n, dim H^n."""
    rows = []
    prev_rank = 0
    for n in range(ctx.start, n_max + 1):
        dc, dn = _flat_dim(ctx, n), _flat_dim(ctx, n + 1)
        if dc * dn > limit:
            raise ComplexError(f"delta_{n} would be {dn} x {dc}, over the resource bound")
        r = rank(delta_matrix(ctx, n))
        z = dc - r
        rows.append({"n": n, "dim_C": dc, "rank_delta": r, "dim_Z": z, "dim_B": prev_rank,
                     "dim_H": z - prev_rank})
        prev_rank = r
    return rows


def cohomology_dimensions(ctx, n_max):
    return [(row["n"], row["dim_H"]) for row in cohomology_table(ctx, n_max)]


def random_cochains(ctx, n, trials, seed):
    rng = random.Random(seed)
    dim = _flat_dim(ctx, n)
    X = zeros((trials, dim))
    for t in range(trials):
        for j in range(dim):
            X[t, j] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return normalize(X)


def verify_dsquared_zero(ctx, n, trials=3, seed=0, basis_limit=4096):
    """delta(delta(f)) = 0 on random rational cochains and, when C^n is small
    enough, on every basis cochain."""
    batches = [random_cochains(ctx, n, trials, seed)] if trials else []
    if _flat_dim(ctx, n) <= basis_limit:
        batches.append(_identity_batch(_flat_dim(ctx, n)))
    for X in batches:
        if X.shape[0] == 0:
            continue
        if not is_zero(apply_delta(ctx, apply_delta(ctx, X, n), n + 1)):
            return False
    return True


# spec-level entry points on single cochains

def delta_omega_hoch(c, ctx, n):
    return ctx.delta(np.asarray(c, dtype=object)[None], n)[0]


def delta_twooperf(c, ctx, n):
    return ctx.delta(np.asarray(c, dtype=object)[None], n)[0]


def delta_nsfam(c, ctx, n):
    """c is a dict label -> component array (no batch axis)."""
    out = ctx.delta_components({r: np.asarray(v, dtype=object)[None] for r, v in c.items()}, n)
    return {r: v[0] for r, v in out.items()}


def delta_dendfam(c, ctx, n):
    if not ctx.dendriform:
        raise ComplexError("delta_dendfam needs a dendriform complex")
    if n >= 2 and (n + 1) in c and not is_zero(c[n + 1]):
        raise ComplexError("input lies outside the dendriform subcomplex")
    c = {r: v for r, v in c.items() if r <= n or n == 1}
    return delta_nsfam(c, ctx, n)


def ns_complex(f):
    if not validate_ns_family(as_ns_family(f)).ok:
        raise ComplexError("NS-family does not validate")
    return NSFamilyComplex(as_ns_family(f))


def dendriform_complex(f):
    f = as_ns_family(f)
    if not is_zero(f.vee):
        raise ComplexError("dendriform complex needs vee = 0")
    if not validate_ns_family(f).ok:
        raise ComplexError("dendriform family does not validate")
    return NSFamilyComplex(f, dendriform=True)


def twisted_complex(t, a, m, h=None):
    from .families import check_twisted_o_family
    if not check_twisted_o_family(t, a, m, h).ok:
        raise ComplexError("twisted family does not validate")
    return TwistedFamilyComplex(t, a, m, h)


def omega_hoch_complex(o, m):
    return OmegaHochComplex(o, m)


def pi_cochain(f):
    """The NS structure as a degree-2 cochain: [1] = <_be, [2] = >_al, [3] = vee."""
    f = as_ns_family(f)
    return {1: f.prec.copy(), 2: f.succ.copy(), 3: f.vee.copy()}
