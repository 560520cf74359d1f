"""Exact verification of p-adic Newton-polygon lower bounds for
multiplicative character sums on projective space."""

__version__ = "0.1.0"

from .exact import (CycloElem, RatPoly, TruncSeries, complex_embeddings,
                    cyclo_mul, cyclotomic_polynomial, series_exp, series_log)
from .hodge import (DegreeProfile, ExponentVector, HodgeVector, coeff_a, d_of,
                    elementary_symmetric, frobenius_orbit, frobenius_step,
                    hodge_numbers, hodge_numbers_of_weight, poly_A, poly_H,
                    poly_Q)
from .polygon import (NewtonPolygon, average, dominates, expected_polygon,
                      from_slope_multiplicities, from_valuation_points)
from .ffield import (CharSumValue, ExtFieldDesc, FieldDesc, HomogPoly,
                     build_field, char_sum, char_sum_reference,
                     enumerate_projective, extension_field, projective_count,
                     smoothness_check_partial,
                     trivial_character_reduction_check)
from .padic import (EisensteinElem, EisensteinRing, ValuationResult, ZqElem,
                    ZqRing, cyclo_to_zq, default_zq_ring, gauss_sum, ord_of,
                    stickelberger_ord, teichmuller, zeta_p)

__all__ = [name for name in dir() if not name.startswith("_")]
