"""Fractional Fourier and continuous fractional wavelet transforms.

The package samples signals on uniform grids and provides the θ-order
Fourier transform, fractional wavelets with their admissibility constants,
the continuous fractional wavelet transform with reconstruction and range
tests, and estimators for Hardy and Morrey norms used to check
boundedness of the transform numerically.
"""

__version__ = "0.1.0"

from .errors import (CatalogError, DegeneratePairError, FormatError, FrwtError,
                     GridMismatchError, HypothesisError, HypothesisViolationError,
                     InputError, InvalidGridError, InvalidMollifierError,
                     InvalidOrderError, NotAWaveletError, OrderMismatchError,
                     ZeroScaleError)
from .grids import (SampledSignal, UniformGrid, build_uniform_grid, check_theta,
                    convolve, correlate, dilate_translate, dilation_factor,
                    inner_product, integrate, interpolate, norm, trapezoid_weights)
from .frft import (FrSpectrum, SpectrumSampler, classical_transform, daughter_spectrum,
                   frft_forward, frft_inverse, spectral_extent, spectral_grid,
                   unwarp_frequency, warp_frequency)
from .wavelets import (CATALOG_NAMES, AdmissibilityResult, CrossAdmissibility,
                       FractionalWavelet, admissibility_constant, catalog,
                       combine_wavelets, cross_admissibility, make_wavelet)
from .cfrwt import (ScaleTranslationGrid, Scalogram, build_scale_grid, cfrwt_forward,
                    cfrwt_forward_spectral, orthogonality_pairing, range_membership,
                    reconstruct, reproducing_kernel, tail_mass,
                    transform_of_combination, transform_with_combined_wavelet,
                    weighted_inner_product, weighted_spectral_profile)
from .spaces import (BallFamily, BoundReport, MollifierFamily, hardy_bound_report,
                     hardy_norm, morrey_bound_report, morrey_norm, normalized_cfrwt)
