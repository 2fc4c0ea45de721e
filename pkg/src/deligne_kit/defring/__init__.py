from .kuranishi import (DeformationRingPresentation, HypothesisViolated, KuranishiData, def_ring,
                        kuranishi, normalize_relations, require_h0_zero, tangent_dim)
from .ce import CETruncation, ce_truncation
from .checks import (CEComparison, Theorem2Result, compare_ce_kuranishi, hom_to_mc, naturality_check,
                     push_forward, theorem2_check)
