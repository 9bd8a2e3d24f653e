"""fracspec: fractional differencing, exact fractional differences, and
spectral verification of their power-law frequency responses."""

from ._kernels import BACKEND
from .arfima import (
    ArfimaSpec,
    MemoryEstimate,
    NoiseSpec,
    default_bandwidth,
    estimate_memory,
    estimate_memory_from_periodogram,
    simulate_arfima,
    theoretical_acf,
    white_noise,
)
from .errors import ConsistencyError, ConvergenceError, CsvParseError
from .exactops import (
    KernelWindow,
    exact_difference,
    exact_kernel_quadrature,
    exact_kernel_series,
    exact_kernel_window,
)
from .glops import (
    GLCoefficients,
    Series,
    arfima_residuals,
    fractional_integrate,
    gl_coefficients,
    gl_derivative_approx,
    gl_difference,
)
from .specfun import HypergeometricParams, gamma, gen_binomial, gen_binomial_gamma_form, hyp1f2
from .spectral import (
    ResponseReport,
    ResponseSample,
    SlopeFit,
    Spectrum,
    dft,
    gl_response_target,
    inverse_dft,
    loglog_slope_fit,
    operator_response,
    periodogram,
    power_law_target,
    response_report,
    sample_autocovariance,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ArfimaSpec",
    "ConsistencyError",
    "ConvergenceError",
    "CsvParseError",
    "GLCoefficients",
    "HypergeometricParams",
    "KernelWindow",
    "MemoryEstimate",
    "NoiseSpec",
    "ResponseReport",
    "ResponseSample",
    "Series",
    "SlopeFit",
    "Spectrum",
    "arfima_residuals",
    "default_bandwidth",
    "dft",
    "estimate_memory",
    "estimate_memory_from_periodogram",
    "exact_difference",
    "exact_kernel_quadrature",
    "exact_kernel_series",
    "exact_kernel_window",
    "fractional_integrate",
    "gamma",
    "gen_binomial",
    "gen_binomial_gamma_form",
    "gl_coefficients",
    "gl_derivative_approx",
    "gl_difference",
    "gl_response_target",
    "hyp1f2",
    "inverse_dft",
    "loglog_slope_fit",
    "operator_response",
    "periodogram",
    "power_law_target",
    "response_report",
    "sample_autocovariance",
    "simulate_arfima",
    "theoretical_acf",
    "white_noise",
    "__version__",
]
