"""Entropies, distances and signal-wavelet mutual information for wavelets."""

from .catalog import (ANALYTIC_NAMES, FILTER_NAMES, AnalyticWavelet, DaughterWavelet,
                      OrthogonalFilterPair, cascade_wavelet, daughter, effective_support,
                      list_catalog, load_filter, load_wavelet, resolve_wavelet, validate_filter)
from .crossdensity import (absolute_bound, cross_density, cross_term, is_invariant_wavelet,
                           mixed_inner_product)
from .divergence import (divergence_from_equiprobability, gibbs_cross_entropy,
                         kl_distance_full, kl_distance_normalized, kl_distance_time)
from .entropy import (entropy_upper_bound, frequency_entropy, global_entropy, mra_entropy,
                      time_entropy)
from .exceptions import (AdmissibilityError, CoverageError, QuadratureError, SignalError,
                         SupportError, UnknownWaveletError, WaveletError)
from .infotheory import (InfoReport, JointDensity, joint_density_cwt, joint_density_dyadic,
                         mra_info_report, mra_joint_density, mutual_info_cwt,
                         mutual_info_dyadic, rank_wavelets)
from .quadrature import QuadratureConfig
from .transform import (CoefficientPyramid, SampledSignal, Scalogram, admissibility_constant,
                        cwt, dwt_periodized, idwt_periodized, recommended_cwt_grid)

__version__ = "0.1.0"
