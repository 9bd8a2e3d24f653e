"""Grunwald-Letnikov fractional differencing of sampled series.

The central objects are the coefficient sequence of (1-L)^alpha with the
alternating sign folded in and its application to a series under the
zero-pre-sample ("type II") convention: samples before the first one are
treated as zero, which makes differencing and integration exact formal
inverses at matching truncation.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels

__all__ = [
    "Series",
    "GLCoefficients",
    "gl_coefficients",
    "gl_difference",
    "fractional_integrate",
    "arfima_residuals",
    "gl_derivative_approx",
    "TRUNCATION_CAP",
]

TRUNCATION_CAP = 10**6


@dataclass(frozen=True, eq=False)
class Series:
    """Uniformly sampled real-valued series.

    ``values[i]`` is the sample at time ``start + i * step``.
    """

    values: np.ndarray
    step: float = 1.0
    start: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("series must contain at least one sample")
        if not np.isfinite(v).all():
            raise ValueError("series values must all be finite")
        if not (self.step > 0.0):
            raise ValueError("series step must be positive")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.values.size)

    def with_values(self, values) -> "Series":
        return Series(values, self.step, self.start)


@dataclass(frozen=True, eq=False)
class GLCoefficients:
    """Coefficients c_m = (-1)^m C(order, m) of (1-L)^order, m = 0..truncation."""

    order: float
    coefficients: np.ndarray
    truncation: int = field(init=False)

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=np.float64)
        if c.ndim != 1 or c.size < 1 or c[0] != 1.0:
            raise ValueError("coefficient sequence must start with c_0 = 1")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "truncation", c.size - 1)

    def __len__(self) -> int:
        return self.coefficients.size


def _validate_truncation(truncation: int) -> int:
    truncation = int(truncation)
    if truncation < 0:
        raise ValueError("truncation must be nonnegative")
    if truncation > TRUNCATION_CAP:
        raise ValueError(f"truncation exceeds cap {TRUNCATION_CAP}")
    return truncation


def gl_coefficients(order: float, truncation: int) -> GLCoefficients:
    """Signed expansion coefficients of (1-L)^order up to lag ``truncation``.

    c_0 = 1, c_m = c_{m-1} * (m - 1 - order) / m.  For nonnegative integer
    order the sequence terminates in exact zeros past lag ``order``.
    """
    truncation = _validate_truncation(truncation)
    m = np.arange(1, truncation + 1, dtype=np.float64)
    coeffs = np.empty(truncation + 1)
    coeffs[0] = 1.0
    if truncation:
        coeffs[1:] = np.cumprod((m - 1.0 - order) / m)
    return GLCoefficients(order, coeffs)


def gl_difference(y: Series, order: float, truncation: int) -> Series:
    """Apply (1-L_T)^order to a series with the given coefficient truncation.

    z_t = sum_{m=0}^{min(t, truncation)} c_m y_{t-m}; samples before the
    series start count as zero.  Negative order performs discrete fractional
    integration through the same code path.
    """
    coeffs = gl_coefficients(order, truncation)
    return y.with_values(_kernels.causal_apply(y.values, coeffs.coefficients))


def fractional_integrate(y: Series, order: float, truncation: int) -> Series:
    """Discrete fractional integration of positive order.

    Alias for ``gl_difference(y, -order, truncation)``; the MA weights
    psi_m = (-1)^m C(-order, m) are all positive for 0 < order < 1.
    """
    if not (order > 0.0):
        raise ValueError("integration order must be positive")
    return gl_difference(y, -order, truncation)


def arfima_residuals(y: Series, d: float, truncation: int) -> Series:
    """Recover the driving noise of an ARFIMA(0, d, 0) series: (1-L)^d y."""
    return gl_difference(y, d, truncation)


def gl_derivative_approx(
    f: Callable[[float], float],
    order: float,
    t: float,
    step: float,
    truncation: int,
) -> float:
    """Finite-step quotient approximating the GL fractional derivative.

    Returns step^(-order) * sum_{m=0}^{truncation} c_m f(t - m*step); the
    quotient tends to the fractional derivative as the step vanishes.
    """
    if not (step > 0.0):
        raise ValueError("step must be positive")
    truncation = _validate_truncation(truncation)
    coeffs = gl_coefficients(order, truncation).coefficients
    samples = np.array([f(t - m * step) for m in range(truncation + 1)], dtype=np.float64)
    if not np.isfinite(samples).all():
        raise ValueError("function provider returned a non-finite value")
    return float(np.dot(coeffs, samples) / step**order)
