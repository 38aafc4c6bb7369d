"""Certified computation of the monic integer transfinite diameter.

The diameter t_M(I) of a real interval is the infimum over nonconstant
monic integer polynomials of the degree-normalized sup on I.  The package
enumerates the nonmonic obstruction polynomials whose roots pin t_M from
below, builds certified two-sided envelopes for the interval-length
threshold functions around a given value, discovers optimal monic
weighted products with lattice reduction and a simplex program, and
certifies attained values exactly: resultant units, criticality
divisibility, directed-rounding strict comparisons, and symbolically
verified multiplicative relations at the obstruction roots.

Everything user-facing is exact or certified: rationals are Fractions,
enclosures are dyadic balls with outward rounding, and comparisons that
matter either decide or raise Undecided at the precision cap.
"""

from .balls import Enclosure
from .errors import MonictdError, Undecided
from .poly import IntPoly, ObstructionValue, factor, resultant
from .realroots import (RatInterval, RootBox, count_roots_in, eval_ball,
                        isolate_roots, refine, root_span)
from .robinson import ObstructionRecord, SearchCell, enumerate_cell, sieve
from .cheb import (CertifiedProduct, WeightedProduct, certify_attainment,
                   filter_factors, gram_matrix, lll_candidates,
                   optimize_weights, relation_basis)
from .bounds import (BoundPoint, CoverSystem, alpha_star, cover_max_gap,
                     cover_min_gap, ell_alpha, envelope, lminus_upper,
                     lplus_lower)
from .special import (FareyInterval, ObstructionVerdict, delta_n,
                      farey_conjecture_check, farey_max_obstruction,
                      gamma_lower, minimal_farey_interval, pell_family)
from .padic import (AttainmentVerdict, attainment_obstruction,
                    critical_witness, identify_maximal_critical)

__version__ = "0.1.0"

__all__ = [
    "AttainmentVerdict", "BoundPoint", "CertifiedProduct", "CoverSystem",
    "Enclosure", "FareyInterval", "IntPoly", "MonictdError",
    "ObstructionRecord", "ObstructionValue", "ObstructionVerdict",
    "RatInterval", "RootBox", "SearchCell", "Undecided", "WeightedProduct",
    "alpha_star", "attainment_obstruction", "certify_attainment",
    "count_roots_in", "cover_max_gap", "cover_min_gap", "critical_witness",
    "delta_n", "ell_alpha", "enumerate_cell", "envelope", "eval_ball",
    "factor", "farey_conjecture_check", "farey_max_obstruction",
    "filter_factors", "gamma_lower", "gram_matrix",
    "identify_maximal_critical", "isolate_roots", "lll_candidates",
    "lminus_upper", "lplus_lower", "minimal_farey_interval",
    "optimize_weights", "pell_family", "refine", "relation_basis",
    "resultant", "root_span", "sieve",
]
