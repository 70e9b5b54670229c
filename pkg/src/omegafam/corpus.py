"""A fixed corpus of small instances used by the tests, the demos and the CLI.

Every entry is deterministic.  Some families are deliberately invalid so that
the agreement checks are not vacuous.
"""

from dataclasses import dataclass

from . import algebra as alg
from . import semigroup as sg
from .exact_linalg import exact_array, identity, zeros
from .families import (OperatorFamily, build_nijenhuis_twisted_context, family,
                       reynolds_from_nilpotent_derivation, tensor_identity_twisted_context)
from .yang_baxter import TensorFamily, o_family_from_aybf2


@dataclass(frozen=True, eq=False)
class Instance:
    name: str
    semigroup: object
    algebra: object
    bimodule: object
    cocycle: object
    family: object


def _const(s, m):
    return family(s, [m] * s.size)


def _inst(name, s, a, m, h, maps):
    return Instance(name, s, a, m, h, family(s, maps))


def noncomm3():
    """{1, l0, l1} with l0, l1 left zeros and an adjoined unit."""
    return sg.adjoin_unit(sg.left_zero(2))


def corpus():
    k = alg.field_k()
    k2 = alg.truncated_poly(2)
    nil2 = alg.nilpotent_poly(2)
    lu = alg.left_unit_algebra()
    ut = alg.upper_triangular()
    d2 = alg.diagonal(2)
    triv, lz2, rz2, c2, m2 = sg.trivial(), sg.left_zero(2), sg.right_zero(2), sg.cyclic_group(2), sg.mult_mod2()
    c3, nc3 = sg.cyclic_group(3), noncomm3()
    adj = alg.adjoint_bimodule
    out = [
        _inst("k-zero-rb", triv, k, adj(k), None, [[[0]]]),
        _inst("k-identity-rb", triv, k, adj(k), None, [[[1]]]),
        _inst("k2-lz2-rb", lz2, k2, adj(k2), None, [[[0, 0], [-1, 0]], [[0, 0], [1, 0]]]),
        _inst("k2-rz2-rb", rz2, k2, adj(k2), None, [[[0, 0], [-1, 0]], [[0, 0], [1, 0]]]),
        _inst("k2-c2-broken", c2, k2, adj(k2), None, [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]),
        _inst("nil2-m2-rb", m2, nil2, adj(nil2), None, [[[0, 0], [-1, -1]], [[0, 0], [-1, 1]]]),
        _inst("nil2-nc3-rb", nc3, nil2, adj(nil2), None,
              [[[0, 0], [1, 0]], [[0, 0], [1, 1]], [[0, 0], [0, -1]]]),
        _inst("nil2-nc3-broken", nc3, nil2, adj(nil2), None,
              [[[1, 0], [0, 0]], [[0, 0], [1, 1]], [[0, 0], [0, -1]]]),
        _inst("lu-rz2-rb", rz2, lu, adj(lu), None, [[[-1, -1], [1, 1]], [[-1, 1], [-1, 1]]]),
        _inst("lu-lz2-rb-fails", lz2, lu, adj(lu), None, [[[-1, -1], [1, 1]], [[-1, 1], [-1, 1]]]),
        _inst("ut-identity-fails", triv, ut, adj(ut), None, [identity(3)]),
        _inst("d2-c3-zero", c3, d2, adj(d2), None, [zeros((2, 2))] * 3),
        _inst("d2-c3-projector-fails", c3, d2, adj(d2), None,
              [[[1, 0], [0, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]]]),
        _inst("nil2-c3-inverse-euler", c3, nil2, adj(nil2), None,
              [[[1, 0], [0, "1/2"]]] * 3),
        _inst("nil2-c3-inverse-euler-broken", c3, nil2, adj(nil2), None,
              [[[1, 0], [0, "1/2"]], [[1, 0], [0, "1/3"]], [[1, 0], [0, "1/2"]]]),
        _inst("lu-m2-coadjoint", m2, lu, alg.coadjoint_bimodule(lu), None,
              [[[0, 1], [-1, 0]], [[0, 1], [-1, 0]]]),
        _inst("k2-zero-twisted-mu", lz2, k2, adj(k2), alg.multiplication_cocycle(k2),
              [zeros((2, 2))] * 2),
    ]
    # twisted Id_alpha families on the Nijenhuis-deformed algebras
    for name, s, a, cs in [("k2-lz2", lz2, k2, [1, 2]), ("k2-m2", m2, k2, [2, 2]),
                           ("k2-rz2", rz2, k2, [1, 3])]:
        n = family(s, [c * identity(a.dim) for c in cs])
        A_N, M, H, ids = build_nijenhuis_twisted_context(n, a, s)
        out.append(Instance(f"nijenhuis-id-{name}", s, A_N, M, H, ids))
    for name, a, s in [("k-c3", k, c3), ("k2-nc3", k2, nc3), ("k-triv", k, triv)]:
        A_N, M, H, ids = tensor_identity_twisted_context(a, s)
        out.append(Instance(f"tensor-id-{name}", s, A_N, M, H, ids))
    A_N, M, H, ids = tensor_identity_twisted_context(k2, lz2)
    broken = ids.maps.copy()
    broken[1, 0, 0] = broken[1, 0, 0] + 1
    out.append(Instance("tensor-id-k2-lz2-broken", lz2, A_N, M, H, OperatorFamily(lz2, broken)))
    # Reynolds families are (-mu)-twisted Rota-Baxter families
    for name, a, s, dmaps in reynolds_sources():
        r = reynolds_from_nilpotent_derivation(family(s, dmaps), a, a.dim + 1)
        out.append(Instance(f"reynolds-{name}", s, a, adj(a), alg.multiplication_cocycle(a, -1), r))
    out.append(_inst("k-identity-reynolds-fails", triv, k, adj(k), alg.multiplication_cocycle(k, -1),
                     [[[2]]]))
    return out


def reynolds_sources():
    """(name, algebra, semigroup, nilpotent derivation family maps)."""
    nil2 = alg.nilpotent_poly(2)
    nil3 = alg.nilpotent_poly(3)
    k2 = alg.truncated_poly(2)
    return [
        ("nil2-triv", nil2, sg.trivial(), [[[0, 0], [1, 0]]]),
        ("nil2-lz2", nil2, sg.left_zero(2), [[[0, 0], [1, 0]], [[0, 0], [1, 0]]]),
        ("nil3-c2", nil3, sg.cyclic_group(2), [[[0, 0, 0], [1, 0, 0], [0, 2, 0]]] * 2),
        ("k2-triv", k2, sg.trivial(), [[[0, 0], [0, 0]]]),
        ("k2-rz2", k2, sg.right_zero(2), [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]),
    ]


def twisted_instances():
    return [i for i in corpus() if i.cocycle is not None]


def skew_aybf2_instances():
    """Skew type-II tensor families on small algebras, with their O-families."""
    lu = alg.left_unit_algebra()
    out = []
    for s in (sg.trivial(), sg.mult_mod2()):
        rf = TensorFamily(s, exact_array([[[0, 1], [-1, 0]]] * s.size))
        out.append((lu, rf, o_family_from_aybf2(rf, lu)))
    return out
