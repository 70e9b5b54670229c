"""Operator families indexed by a semigroup, and what they induce.

Run: python3 demos/01_families.py
"""

from omegafam import algebra as alg
from omegafam import family_algebras as fa
from omegafam import families as fm
from omegafam import semigroup as sg
from omegafam.exact_linalg import identity

k2 = alg.truncated_poly(2)        # k[x]/(x^2), basis 1, x
lz2 = sg.left_zero(2)             # ab = a, no unit
print("semigroup table:", lz2.table)

# R_0(1) = -x, R_1(1) = x, both kill x
rb = fm.family(lz2, [[[0, 0], [-1, 0]], [[0, 0], [1, 0]]])
print("Rota-Baxter family:", fm.check_rota_baxter_family(rb, k2).ok)

# The identity on k is not Rota-Baxter: id(1) id(1) = 1 but id(1*1 + 1*1) = 2.
bad = fm.check_rota_baxter_family(fm.family(sg.trivial(), [[[1]]]), alg.field_k())
print("identity on k:", bad.ok, "witness", bad.witness)

# A Nijenhuis family N_a = c_a id builds a twisted context where the
# identity maps form an H-twisted O-operator family.
n = fm.family(lz2, [identity(2), 2 * identity(2)])
A_N, M, H, ids = fm.build_nijenhuis_twisted_context(n, k2)
print("twisted identity family:", fm.check_twisted_o_family(ids, A_N, M, H).ok)

# Every twisted family induces an NS-family algebra on the module.
ns = fa.induce_ns_family("twisted_o", ids, A_N, M, H)
print("induced NS-family validates:", fa.validate_ns_family(ns).ok)
print("its total Omega-algebra is Omega-associative:",
      fa.validate_omega_associative(fa.total_omega_assoc_from_ns(ns)).ok)

# Reynolds families from a nilpotent derivation D: R = (id + D)^-1.
nil2 = alg.nilpotent_poly(2)
d = fm.constant_family(lz2, [[0, 0], [1, 0]])
r = fm.reynolds_from_nilpotent_derivation(d, nil2, 3)
print("Reynolds family:", r.maps[0].tolist(), fm.check_reynolds_family(r, nil2).ok)
