"""asymq: permutation asymmetry of Dicke states with attached bit strings.

Exact Schur-Weyl outcome distributions, averaged-state entropies and
threshold entropies, their Type I / Type II asymptotics with refined
constants, decohered baselines, one-shot distinguishability bounds, and
asymmetry-activation amounts, plus a brute-force oracle validating the exact
machinery at small size.
"""

from .activation import ActivationReport, antisym_activation, antisym_optimal_d, permutation_activation
from .asymptotics import (CltReport, CltRow, RefinedConstants, TypeIIParams, TypeIRatios,
                          avg_entropy_type1_substitute, clt_check, decohered_asymmetry,
                          decohered_type1_limit, decohered_type2_approx, entropy_rate_gap,
                          fig1_rows, fig2_rows, product_slice, slice_params, type1_entropy_approx,
                          type1_expectation, type1_log_count, type1_q_pmf, type2_entropy_leading,
                          type2_level_function, type2_log_count, type2_params,
                          type2_refined_constants, type2_refined_entropy)
from .errors import AsymqError, ConstraintError, DomainError, InvariantError, SizeCapError
from .infospec import (ChainReport, CqEnsemble, DensityMatrix, SpectralThreshold,
                       distinguishable_count_bounds, distinguishable_count_bounds_from_spectrum,
                       divergence_chain_check, hypothesis_testing_divergence,
                       info_spectrum_divergence, joint_cq_state, orthogonal_orbit_log_count,
                       product_cq_state, spectral_threshold_entropy, threshold_scan)
from .numeric import (E, LogValue, binary_entropy, binary_entropy_family, binomial_exact,
                      gaussian_cdf, gaussian_quantile, log_binomial, log_fraction)
from .oracle import DenseState, avg_state_oracle, build_state, entropy_oracle, pmf_oracle
from .report import AsymmetryReport, asymmetry_report
from .schur_weyl import (AvgSpectrum, ExactPMF, Params, SpectralBlock, avg_entropy,
                         avg_entropy_threshold, avg_spectrum, cg_squared, default_pmf,
                         dim_irrep, flipped_params, pmf, pmf_chain, pmf_closed_kl,
                         pmf_quantile, pmf_symmetry_pair, pmf_to_csv, validate_params)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
