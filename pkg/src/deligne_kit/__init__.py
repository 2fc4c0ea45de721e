"""Deformation theory through differential graded Lie algebras, computed exactly at desk scale."""
from .fields import GF, QQ, parse_field
from .glin import GradedMap, GradedVectorSpace, Matrix, homology, kernel_basis, split_complex
from .dgla import DgLieAlgebra, cohomology, make_dgla, nilpotency_class, tensor_with_ideal, validate
from .artin import ArtinAlgebra, ArtinMorphism, enumerate_homs, make_truncated_polynomial, parse_artin
from .deligne import (DeligneGroupoid, bch, curvature, enumerate_mc, gauge_act, groupoid_equivalent,
                      is_maurer_cartan, pi0, transporter)
from .defring import HypothesisViolated, compare_ce_kuranishi, ce_truncation, def_ring, tangent_dim, theorem2_check
from .descent import (CoverDiagram, HypothesisNotVerified, cech_complex, constant_cover, descent_groupoid, global_sections,
                      homotopy_sheaf_check, split_cover, stack_check)
from .repdef import (FiniteGroup, Representation, cyclic_group, governance_check, governing_dgla,
                     rep_def_groupoid)
from .library import builtin_cover, builtin_dgla, builtin_rep, catalog

__version__ = "0.1.0"
