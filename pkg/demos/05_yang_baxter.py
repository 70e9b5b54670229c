"""Associative Yang-Baxter families found by bounded search.

Run: python3 demos/05_yang_baxter.py
"""

from omegafam import algebra as alg
from omegafam import families as fm
from omegafam import search as se
from omegafam import semigroup as sg
from omegafam import yang_baxter as yb

k2 = alg.truncated_poly(2)
hits = se.search("aybf1", k2, sg.trivial(), [-1, 0, 1])
print(f"type-I solutions on k[x]/(x^2) with entries in {{-1,0,1}}: {len(hits)}")
for h in hits:
    rf = h["object"]
    R = yb.rb_family_from_aybf1(rf, k2)
    print("  r =", rf.r[0].tolist(), "-> R =", R.maps[0].tolist(), "RB:", fm.check_rota_baxter_family(R, k2).ok)

lu = alg.left_unit_algebra()
skew = se.search("aybf2_skew", lu, sg.mult_mod2(), [-1, 0, 1])
print(f"skew type-II families on the left-unit algebra over {{0,1}} under multiplication: {len(skew)}")
for h in skew:
    T = yb.o_family_from_aybf2(h["object"], lu)
    print("  r_0 =", h["object"].r[0].tolist(), "r_1 =", h["object"].r[1].tolist(),
          "O-family on the coadjoint bimodule:", fm.check_twisted_o_family(T, lu, alg.coadjoint_bimodule(lu)).ok)
