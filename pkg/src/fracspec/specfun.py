"""Real-argument special functions used by the coefficient and kernel formulas.

Everything here is scalar and pure: the Euler gamma function, generalized
binomial coefficients (recurrence and gamma-quotient forms), and the
generalized hypergeometric series 1F2.
"""

import math
from dataclasses import dataclass

from .errors import ConvergenceError

__all__ = [
    "gamma",
    "gen_binomial",
    "gen_binomial_gamma_form",
    "HypergeometricParams",
    "hyp1f2",
    "sinpi",
    "cospi",
]

# Lanczos approximation, g = 7, 9 terms.  Relative error below 1e-13 on the
# right half line, which the reflection formula preserves away from poles.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# Largest x with Gamma(x) representable in double precision.
_GAMMA_OVERFLOW_X = 171.624


def sinpi(x: float) -> float:
    """sin(pi*x) with exact range reduction (exact zeros at integers)."""
    n = round(x)
    r = x - n  # exact
    if r == 0.0:
        return 0.0
    s = math.sin(math.pi * r)
    return -s if n % 2 else s


def cospi(x: float) -> float:
    """cos(pi*x) with exact range reduction (exact zeros at half-integers)."""
    n = round(x)
    r = x - n
    if abs(r) == 0.5:
        return 0.0
    c = math.cos(math.pi * r)
    return -c if n % 2 else c


def _lanczos_gamma(x: float) -> float:
    # valid for x >= 0.5
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, 9):
        acc += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def gamma(x: float) -> float:
    """Euler gamma function for real x.

    Accurate to at least 12 significant digits for |x| <= 50.  Raises
    ValueError at the poles (zero and negative integers) and OverflowError
    once the result exceeds the double-precision range.
    """
    x = float(x)
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma pole at x={x:g}")
    if x > _GAMMA_OVERFLOW_X:
        raise OverflowError(f"gamma({x:g}) exceeds double precision range")
    if x >= 0.5:
        return _lanczos_gamma(x)
    # reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
    s = sinpi(x)
    if 1.0 - x > _GAMMA_OVERFLOW_X:
        # Gamma(1-x) overflows, so the true value underflows to zero.
        return math.copysign(0.0, s)
    return math.pi / (s * _lanczos_gamma(1.0 - x))


def gen_binomial(d: float, m: int) -> float:
    """Generalized binomial coefficient C(d, m) for real d, integer m >= 0.

    Computed by the pole-free multiplicative recurrence
    C(d, 0) = 1, C(d, m) = C(d, m-1) * (d - m + 1) / m, so integer d with
    m > d yields exact zeros.
    """
    if m < 0:
        raise ValueError("m must be a nonnegative integer")
    c = 1.0
    for k in range(1, m + 1):
        # multiply before dividing: for integer d every intermediate is an
        # exact integer (Pascal's recurrence divides evenly at each step)
        c = c * (d - k + 1) / k
    return c


def gen_binomial_gamma_form(d: float, m: int) -> float:
    """C(d, m) as the gamma quotient (-1)^(m-1) * d * G(m-d) / (G(1-d) G(m+1)).

    Cross-check oracle for :func:`gen_binomial`.  Requires d not a
    nonnegative integer when m >= 1 (otherwise G(1-d) or G(m-d) sits on a
    pole); m = 0 returns 1 by convention.
    """
    if m < 0:
        raise ValueError("m must be a nonnegative integer")
    if m == 0:
        return 1.0
    if d >= 0.0 and d == math.floor(d):
        raise ValueError(f"gamma form undefined for nonnegative integer d={d:g}")
    sign = -1.0 if (m - 1) % 2 else 1.0
    return sign * d * gamma(m - d) / (gamma(1.0 - d) * gamma(m + 1.0))


def _check_lower_param(name: str, value: float) -> None:
    if value <= 0.0 and value == math.floor(value):
        raise ValueError(
            f"hypergeometric lower parameter {name}={value:g} is a nonpositive integer"
        )


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameter triple (a; b, c) of the 1F2 series.

    b and c must not be zero or negative integers, where the series is
    undefined.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        _check_lower_param("b", self.b)
        _check_lower_param("c", self.c)


# Beyond |z| ~ 40 the alternating series loses more than 6 digits to
# cancellation in double precision; callers needing larger |z| should
# integrate instead (see exactops quadrature).
Z_MAX = 40.0

_EPS_REL = 1e-16
_MAX_TERMS = 10_000


def hyp1f2(params: HypergeometricParams, z: float) -> float:
    """Generalized hypergeometric series 1F2(a; b, c; z) for real z, |z| <= 40.

    Terms follow the recurrence t_{k+1} = t_k * (a+k) z / ((b+k)(c+k)(k+1))
    and are accumulated with compensated (Kahan) summation.  Summation stops
    once |t_k| < 1e-16 * |sum| for two consecutive k with k >= 8.
    """
    z = float(z)
    if abs(z) > Z_MAX:
        raise ValueError(f"|z|={abs(z):g} exceeds series domain |z| <= {Z_MAX:g}")
    a, b, c = params.a, params.b, params.c
    term = 1.0
    total = 0.0
    comp = 0.0  # Kahan compensation
    small_streak = 0
    for k in range(_MAX_TERMS):
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if k >= 8 and abs(term) < _EPS_REL * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
        term *= (a + k) * z / ((b + k) * (c + k) * (k + 1))
    raise ConvergenceError(
        f"1F2 series did not converge within {_MAX_TERMS} terms (z={z:g})"
    )
