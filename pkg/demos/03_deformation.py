"""Formal deformations and their gauge equivalences.

Run: python3 demos/03_deformation.py
"""

from omegafam import corpus as cp
from omegafam import deformation as df
from omegafam.exact_linalg import is_zero

inst = next(i for i in cp.corpus() if i.name == "nil2-m2-rb")
base = df.constant_deformation(inst.family, inst.algebra, inst.bimodule, inst.cocycle, order=3)

# Gauge the constant deformation by exp(tD) with D = [(theta, 0), -].
theta = [1, -2]
d = df.apply_equivalence(base, df.gauge_equivalence(theta, base))
print("gauged deformation valid at orders 0..3:", [r.ok for r in df.check_family_deformation(d)])
print("order-1 term is a cocycle:", df.infinitesimal_cocycle_check(d))

# A second gauge transformation shifts the order-1 term by delta(theta').
theta2 = [0, 1]
e = df.gauge_equivalence(theta2, d)
dbar = df.apply_equivalence(d, e)
shift = d.terms[1].maps - dbar.terms[1].maps
print("intertwining holds:", df.check_intertwining(d, e, dbar).ok)
print("shift equals delta(theta'):", is_zero(shift - df.coboundary_family(theta2, d).maps))

# If the order-1 term is delta(theta), one trivialization step removes it.
t = df.apply_equivalence(base, df.gauge_equivalence([-3, 1], base))
out = df.trivialization_step(t, [3, -1])
print("order-1 term after trivialization is zero:", is_zero(out.terms[1].maps))
