"""Exact computations with semigroup-indexed operator families on small algebras."""

from .algebra import (Algebra, Bimodule, Cocycle2, adjoint_bimodule, coadjoint_bimodule, cocycle_extension,
                      extend_by_semigroup, multiplication_cocycle, semidirect_product,
                      validate_2cocycle, validate_algebra, validate_bimodule)
from .coalgebra import (codualize_context, dualize_cofamily, induce_ns_cofamily, validate_ns_cofamily,
                        check_twisted_o_cofamily)
from .cohomology import (cohomology_dimensions, cohomology_table, delta_dendfam, delta_nsfam,
                         delta_omega_hoch, delta_twooperf, verify_dsquared_zero)
from .deformation import (apply_equivalence, check_family_deformation, equivalence, family_deformation,
                          gauge_equivalence, infinitesimal_cocycle_check, trivialization_step)
from .families import (OperatorFamily, check_derivation_family, check_nijenhuis_family, check_reynolds_family,
                       check_rota_baxter_family, check_twisted_o_family, collapse_family,
                       graph_subalgebra_check, lift_to_semidirect, reynolds_binomial_identity,
                       reynolds_from_nilpotent_derivation)
from .family_algebras import (NSFamily, adjunction_transport, induce_ns_family, ns_family_to_ns_algebra,
                              validate_dendriform_family, validate_ns_family, validate_tridendriform_family)
from .report import ValidationReport
from .semigroup import FiniteSemigroup, validate_semigroup
from .yang_baxter import check_aybe, check_aybf_type1, check_aybf_type2

__version__ = "0.1.0"
