"""Exact arithmetic for finite flat covers of affine curve charts.

Building blocks: prime-field and rational scalars, sparse multivariate
polynomials with quotient-ring reduction, Groebner-based ideal calculus,
fraction-free linear algebra, spectral covers with norms and fractional
ideals, Fitting-ideal divisor images, and spectral-data checkers.
"""

from .fields import GF, QQ, PrimeField, RationalField
from .polynomials import Ring, Poly, MonomialOrder, GREVLEX, LEX
from .groebner import (Ideal, artinian_dim, ideal_colon, intersect,
                       reduced_groebner_basis, saturate)
from .matrices import RingMatrix, SmithForm, adjugate, smith_normal_form
from .cover import (CoverChart, FractionalIdeal, NumericProfile,
                    ideal_iso_test, ideal_norm, is_regular)
from .divisors import (GeneralizedDivisor, chart_degree, degree_at_point,
                       direct_image, divisor_sum, find_preimage_divisor,
                       inverse_image, support_points)
from .spectral import (HiggsChart, SpectralModule, bnr_q_map, char_coeffs,
                       companion_higgs, conjugacy_witness, degree_formulas,
                       gsp_translate, higgs_to_module, module_to_higgs,
                       norm_fiber_check, polarized_rank, sigma_pullback,
                       sp_duality_check, sp_parity_check, to_fractional,
                       verify_bnr_sequence)

__version__ = "0.1.0"
