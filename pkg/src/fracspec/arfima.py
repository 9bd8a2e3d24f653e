"""ARFIMA(p, d, q) simulation and semiparametric memory estimation.

Simulation runs the pipeline white noise -> MA filter -> fractional
integration (truncated MA-infinity filter) -> AR recursion, so that for
p = q = 0 applying the fractional difference with the same truncation
recovers the driving noise exactly.

The noise generator is pinned for cross-platform reproducibility: a 64-bit
counter passed through the SplitMix64 permutation yields uniforms, mapped to
normals by Acklam's rational approximation of the inverse CDF.  Identical
(sigma, seed) always produce bit-identical sequences.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .glops import Series, gl_coefficients
from .spectral import loglog_slope_fit, periodogram

__all__ = [
    "NoiseSpec",
    "ArfimaSpec",
    "MemoryEstimate",
    "white_noise",
    "simulate_arfima",
    "estimate_memory",
    "estimate_memory_from_periodogram",
    "theoretical_acf",
    "default_bandwidth",
]

_SPLITMIX_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SPLITMIX_M1 = np.uint64(0xBF58476D1CE4E5B9)
_SPLITMIX_M2 = np.uint64(0x94D049BB133111EB)

# Acklam's inverse normal CDF (relative error < 1.15e-9, ample for noise).
_PPF_A = (
    -3.969683028665376e01,
    2.209460984245205e02,
    -2.759285104469687e02,
    1.383577518672690e02,
    -3.066479806614716e01,
    2.506628277459239e00,
)
_PPF_B = (
    -5.447609879822406e01,
    1.615858368580409e02,
    -1.556989798598866e02,
    6.680131188771972e01,
    -1.328068155288572e01,
)
_PPF_C = (
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e00,
    -2.549732539343734e00,
    4.374664141464968e00,
    2.938163982698783e00,
)
_PPF_D = (
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e00,
    3.754408661907416e00,
)
_PPF_SPLIT = 0.02425


@dataclass(frozen=True)
class NoiseSpec:
    """Deterministic white-noise specification: N(0, sigma^2) draws keyed by seed.

    The distribution is fixed to a standard normal scaled by sigma.
    """

    sigma: float = 1.0
    seed: int = 0
    distribution: str = "normal"

    def __post_init__(self):
        if not (self.sigma > 0.0):
            raise ValueError("sigma must be positive")
        if not (0 <= int(self.seed) < 2**64):
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.distribution != "normal":
            raise ValueError("only the normal distribution is supported")


@dataclass(frozen=True)
class ArfimaSpec:
    """Model orders and sample counts for an ARFIMA(p, d, q) simulation.

    |d| < 1 is enforced; the classical stationarity range is |d| < 0.5 and
    simulations outside it are flagged via :attr:`classical_stationary`.
    The AR polynomial must be stable (all roots of the reversed polynomial
    strictly inside the unit circle, tolerance 1e-6).
    """

    d: float
    n: int
    ar: tuple[float, ...] = ()
    ma: tuple[float, ...] = ()
    burn_in: int = 0
    truncation: int = 4096

    def __post_init__(self):
        if not (abs(self.d) < 1.0):
            raise ValueError("memory order d must satisfy |d| < 1")
        if self.n < 1:
            raise ValueError("sample count n must be positive")
        if self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")
        object.__setattr__(self, "ar", tuple(float(v) for v in self.ar))
        object.__setattr__(self, "ma", tuple(float(v) for v in self.ma))
        if self.ar:
            # roots of z^p - phi_1 z^(p-1) - ... - phi_p
            roots = np.roots(np.concatenate(([1.0], -np.asarray(self.ar))))
            if roots.size and np.abs(roots).max() > 1.0 - 1e-6:
                raise ValueError(
                    "unstable AR polynomial: root magnitude "
                    f"{np.abs(roots).max():.6f} reaches the unit circle"
                )

    @property
    def classical_stationary(self) -> bool:
        return abs(self.d) < 0.5


@dataclass(frozen=True)
class MemoryEstimate:
    """Log-periodogram estimate of the memory order.

    Classification is long iff d_hat > 2*std_err, short iff
    d_hat < -2*std_err, and none otherwise.
    """

    d_hat: float
    std_err: float
    bandwidth: int
    n: int
    classification: str = field(init=False)

    def __post_init__(self):
        if self.bandwidth < 3:
            raise ValueError("bandwidth must be at least 3")
        threshold = 2.0 * self.std_err
        if self.d_hat > threshold:
            label = "long"
        elif self.d_hat < -threshold:
            label = "short"
        else:
            label = "none"
        object.__setattr__(self, "classification", label)


def _splitmix64(seed: int, n: int) -> np.ndarray:
    counters = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + counters * _SPLITMIX_GAMMA
        z = (z ^ (z >> np.uint64(30))) * _SPLITMIX_M1
        z = (z ^ (z >> np.uint64(27))) * _SPLITMIX_M2
        z = z ^ (z >> np.uint64(31))
    return z


def _norm_ppf(p: np.ndarray) -> np.ndarray:
    a, b, c, d = _PPF_A, _PPF_B, _PPF_C, _PPF_D
    x = np.empty_like(p)
    lower = p < _PPF_SPLIT
    upper = p > 1.0 - _PPF_SPLIT
    central = ~(lower | upper)

    q = p[central] - 0.5
    r = q * q
    num = ((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]
    den = ((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0
    x[central] = num * q / den

    q = np.sqrt(-2.0 * np.log(p[lower]))
    num = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
    den = (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
    x[lower] = num / den

    q = np.sqrt(-2.0 * np.log(1.0 - p[upper]))
    num = ((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]
    den = (((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0
    x[upper] = -num / den
    return x


def white_noise(spec: NoiseSpec, n: int) -> Series:
    """n pseudo-random N(0, sigma^2) deviates; identical spec gives
    bit-identical output on every platform."""
    if n < 1:
        raise ValueError("n must be positive")
    bits = _splitmix64(spec.seed, n)
    # 53 high bits, offset to the open interval (0, 1)
    u = ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return Series(_norm_ppf(u) * spec.sigma, step=1.0, start=0.0)


def simulate_arfima(spec: ArfimaSpec, noise: NoiseSpec) -> Series:
    """Simulate an ARFIMA(p, d, q) path.

    Pipeline: white noise -> MA(q) filter -> fractional integration of
    order d (truncated at spec.truncation) -> AR(p) recursion; the first
    burn_in samples are then discarded.
    """
    total = spec.n + spec.burn_in
    values = white_noise(noise, total).values
    if spec.ma:
        values = np.convolve(values, np.concatenate(([1.0], spec.ma)))[:total]
    if spec.d != 0.0:
        weights = gl_coefficients(-spec.d, spec.truncation).coefficients
        values = _kernels.causal_apply(values, weights)
    if spec.ar:
        values = _kernels.ar_recurse(values, np.asarray(spec.ar))
    return Series(values[spec.burn_in :], step=1.0, start=0.0)


def default_bandwidth(n: int) -> int:
    """Standard bias/variance compromise: floor(sqrt(n))."""
    return int(math.isqrt(n))


def estimate_memory_from_periodogram(
    omega: np.ndarray, power: np.ndarray, bandwidth: int, n: int | None = None
) -> MemoryEstimate:
    """Log-periodogram regression on precomputed (omega_j, S_j) pairs.

    OLS of log S_j on -2 log omega_j over the first ``bandwidth``
    frequencies; the slope is d_hat and the regression supplies its
    standard error.
    """
    omega = np.asarray(omega, dtype=np.float64)
    power = np.asarray(power, dtype=np.float64)
    if omega.size != power.size:
        raise ValueError("omega and power must have equal length")
    bandwidth = int(bandwidth)
    if not (3 <= bandwidth <= omega.size):
        raise ValueError("bandwidth must satisfy 3 <= bandwidth <= len(omega)")
    omega = omega[:bandwidth]
    power = power[:bandwidth]
    if (power <= 0.0).any():
        raise ValueError("periodogram values must be positive (degenerate input)")
    fit = loglog_slope_fit(omega, power)
    # regressing on -2 log(omega) halves and negates the log-log slope
    return MemoryEstimate(
        d_hat=-fit.slope / 2.0,
        std_err=fit.stderr / 2.0,
        bandwidth=bandwidth,
        n=omega.size if n is None else int(n),
    )


def estimate_memory(y: Series, bandwidth: int | None = None) -> MemoryEstimate:
    """Estimate the memory order of a series from its lowest periodogram
    frequencies.  Default bandwidth is floor(sqrt(n))."""
    n = len(y)
    if bandwidth is None:
        bandwidth = default_bandwidth(n)
    if not (3 <= bandwidth <= n / 2):
        raise ValueError("bandwidth must satisfy 3 <= bandwidth <= n/2")
    omega, power = periodogram(y)
    return estimate_memory_from_periodogram(omega, power, bandwidth, n=n)


def theoretical_acf(
    d: float, sigma: float, max_lag: int, truncation: int
) -> np.ndarray:
    """Noise-free autocovariance gamma(k) = sigma^2 sum_j psi_j psi_{j+k}
    of an ARFIMA(0, d, 0) process, lags 0..max_lag.

    psi are the MA-infinity weights of (1-L)^(-d), summed up to
    ``truncation`` (which must be at least 10*max_lag).  The leading
    omitted term psi_J^2 serves as the truncation-tail indicator; if it
    exceeds 1e-6 of gamma(0) the truncation is rejected as too small.
    """
    if not (abs(d) < 0.5):
        raise ValueError("theoretical ACF requires |d| < 0.5")
    if not (sigma > 0.0):
        raise ValueError("sigma must be positive")
    max_lag = int(max_lag)
    if max_lag < 0:
        raise ValueError("max_lag must be nonnegative")
    truncation = int(truncation)
    if truncation < 10 * max_lag:
        raise ValueError("truncation must be at least 10 * max_lag")
    psi = gl_coefficients(-d, truncation + max_lag).coefficients
    gammas = sigma**2 * np.correlate(psi, psi[: truncation + 1], "valid")
    tail_estimate = sigma**2 * psi[truncation] ** 2
    if tail_estimate > 1e-6 * gammas[0]:
        raise ValueError(
            f"truncation {truncation} too small for d={d:g}: tail estimate "
            f"{tail_estimate:.3e} exceeds 1e-6 of gamma(0)={gammas[0]:.3e}"
        )
    return gammas
