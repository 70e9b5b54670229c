"""Coalgebra-side families and their duals.

Run: python3 demos/04_duality.py
"""

from omegafam import coalgebra as cg
from omegafam import corpus as cp
from omegafam import family_algebras as fa
from omegafam import families as fm
from omegafam.exact_linalg import is_zero

inst = next(i for i in cp.corpus() if i.name == "tensor-id-k-c3")
sf, c, n, h = cg.codualize_context(inst.family, inst.algebra, inst.bimodule, inst.cocycle)
print("coalgebra coassociative:", cg.validate_coalgebra(c).ok)
print("cobimodule:", cg.validate_cobimodule(c, n).ok, " co-cocycle:", cg.validate_cococycle(h, c, n).ok)
print("twisted O-cofamily:", cg.check_twisted_o_cofamily(sf, c, n, h).ok)

t, a, m, h2 = cg.dualize_cofamily(sf, c, n, h)
print("dual family validates:", fm.check_twisted_o_family(t, a, m, h2).ok)

nc = cg.induce_ns_cofamily(sf, c, n, h)
print("NS-cofamily validates:", cg.validate_ns_cofamily(nc).ok)
direct = fa.induce_ns_family("twisted_o", inst.family, inst.algebra, inst.bimodule, inst.cocycle)
dual = cg.dual_ns_family(nc)
print("dual of the NS-cofamily is the induced NS-family:",
      is_zero(dual.prec - direct.prec) and is_zero(dual.succ - direct.succ) and is_zero(dual.vee - direct.vee))
