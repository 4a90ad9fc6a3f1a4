"""Raney numbers and the measures mu(p, r) with densities W_{p,r}."""

__version__ = "0.1.0"

from .core import (RaneyParams, as_fraction, functional_equation_residual,
                   fuss_power_series, raney_binomial, raney_number,
                   raney_sequence, support_end)
from .density import (SignedDensity, build_density, cdf, cdf_table,
                      eval_density, mellin_transform)
from .mellin import FactorizationUnavailable, derive_parameters, factorize
from .rmt import jacobi_eigvalsh, ks_against_mu, spectrum_sample
from .sampler import SamplerState, sample_mu
from .special import (AccuracyError, GammaRatio, LogGammaValue, ParameterError,
                      PoleError, gamma_ratio, log_gamma, pfq)
from .verify import (MomentReport, PositivityMap, integrate, positivity_scan,
                     verify_moments)

__all__ = [
    "RaneyParams", "as_fraction", "functional_equation_residual",
    "fuss_power_series", "raney_binomial", "raney_number", "raney_sequence",
    "support_end", "SignedDensity", "build_density", "cdf", "cdf_table",
    "eval_density", "mellin_transform", "FactorizationUnavailable",
    "derive_parameters", "factorize", "jacobi_eigvalsh", "ks_against_mu",
    "spectrum_sample", "SamplerState", "sample_mu", "AccuracyError",
    "GammaRatio", "LogGammaValue", "ParameterError", "PoleError",
    "gamma_ratio", "log_gamma", "pfq", "MomentReport", "PositivityMap",
    "integrate", "positivity_scan", "verify_moments",
]
