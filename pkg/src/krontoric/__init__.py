"""Exact toric degeneration data for Kronecker quiver moduli spaces.

Linked tableaux pairs, semi-invariants by Weyl-orbit expansion, the
semi-standard exponent cone with its Hilbert basis, matching-field
degenerations with SAGBI verification, and mirror Laurent polynomials with
classical periods.  All arithmetic is exact.
"""

__version__ = "0.1.0"

from .quiver import QuiverSpec
from .tableaux import (Atom, LinkedPair, Tableau, build_linked_pair,
                       enumerate_pairs_at_height, enumerate_pairs_backtracking,
                       is_semistandard, mon_minus, mon_plus,
                       pair_from_exponent)
from .cones import (Cone, Halfspace, double_description,
                    grassmannian_cone_views, intersect, kronecker_halfspaces,
                    membership)
from .lattice import (HilbertResult, hilbert_basis, hilbert_basis_exact,
                      lattice_points_at_height, quiver_budget_rows,
                      standard_height)
from .polytopes import (FanRays, Polytope, ToricReport, classify_toric,
                        normal_fan_rays, slice_polytope)
from .semiinvariants import (Grading, GroupElement, SemiInvariant, expand,
                             grading_value, leading_monomial,
                             semi_invariance_check, verify_lm)
from .matching import (ColumnCatalog, GrassmannianSpec, MatchingField,
                       PipelineReport, block_diagonal_mf, canonical_tableau,
                       canonical_linked_pair, grading_c0, grading_c2,
                       induced_matching_field, mf_cone, mf_polytope,
                       sagbi_pipeline)
from .mirror import (LaurentPolynomial, PeriodSequence, classical_period,
                     laurent_from_rays, newton_invariants)

__all__ = [name for name in dir() if not name.startswith("_")]
