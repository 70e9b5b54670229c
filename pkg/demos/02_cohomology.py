"""Cohomology of a twisted O-operator family, computed two ways.

The twisted complex of (T, A, M, H) coincides with the Omega-Hochschild
complex of the induced Omega-algebra on M with coefficients in A.

Run: python3 demos/02_cohomology.py
"""

from omegafam import cohomology as co
from omegafam import corpus as cp
from omegafam import family_algebras as fa


def show(title, table):
    print(title)
    print("   n  dim C  rank d  dim H")
    for row in table:
        print(f"{row['n']:>4} {row['dim_C']:>6} {row['rank_delta']:>7} {row['dim_H']:>6}")


inst = next(i for i in cp.corpus() if i.name == "lu-m2-coadjoint")
ctx = co.twisted_complex(inst.family, inst.algebra, inst.bimodule, inst.cocycle)
show(f"twisted complex of {inst.name}", co.cohomology_table(ctx, 2))

o, m = fa.omega_bimodule_from_twisted_family(inst.family, inst.algebra, inst.bimodule, inst.cocycle)
show("Omega-Hochschild complex of the induced bimodule", co.cohomology_table(co.omega_hoch_complex(o, m), 2))

print("delta^2 = 0 in degree 1:", co.verify_dsquared_zero(ctx, 1, trials=3, seed=0))

# NS-family cohomology of the structure induced by the same family
ns = fa.induce_ns_family("twisted_o", inst.family, inst.algebra, inst.bimodule, inst.cocycle)
show("NS-family complex", co.cohomology_table(co.ns_complex(ns), 2))
