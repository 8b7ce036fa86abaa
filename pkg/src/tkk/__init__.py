"""Exact-arithmetic kernel for Jordan triple systems, their three-graded
Lie algebras, and universal central extensions of matrix Lie algebras."""

from .linalg import (BasedSpace, LinearMap, RrefAccumulator, Subspace,
                     kernel_basis, quotient_space, rref, wedge_square)
from .algebra import (Algebra, IdentityReport, StructureTable, check_identity,
                      commutator_subspace, direct_sum, grassmann_algebra,
                      make_algebra, matrix_algebra, peirce_decompose,
                      plus_algebra, product_eval, scalar_algebra,
                      special_linear, truncated_free)
from .jordan import (GradedLie, TripleSystem, check_jts, make_triple_system,
                     standard_tkk, tkk_functor_map, triple_from_associative,
                     triple_from_jordan, universal_tkk)
from .uce import (CentralExtension, build_uce, canonical_lift, growth_report,
                  steinberg_check, verify_lie_hom, verify_sl2_iso,
                  verify_sl4_iso)
from .homology import hc1_dim

__all__ = [name for name in dir() if not name.startswith("_")]
