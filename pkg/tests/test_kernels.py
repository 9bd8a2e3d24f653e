"""Backend-agnostic index-convention oracles for the hot kernels, plus
agreement between the active backend and the pure-numpy fallbacks."""

import numpy as np
import pytest

from fracspec import _kernels


def _brute_causal(y, c):
    n, k = len(y), len(c)
    out = np.zeros(n)
    for t in range(n):
        for m in range(min(t + 1, k)):
            out[t] += c[m] * y[t - m]
    return out


def _brute_two_sided(y, w, periodic):
    n = len(y)
    half = (len(w) - 1) // 2
    out = np.zeros(n)
    for t in range(n):
        for m in range(-half, half + 1):
            i = t - m
            if periodic:
                out[t] += w[m + half] * y[i % n]
            elif 0 <= i < n:
                out[t] += w[m + half] * y[i]
    return out


def _brute_ar(x, phi):
    out = np.zeros(len(x))
    for t in range(len(x)):
        out[t] = x[t] + sum(
            phi[i] * out[t - 1 - i] for i in range(len(phi)) if t - 1 - i >= 0
        )
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.mark.parametrize("n,k", [(16, 4), (7, 12), (33, 33)])
def test_causal_apply_matches_brute_force(rng, n, k):
    y = rng.normal(size=n)
    c = rng.normal(size=k)
    assert np.allclose(_kernels.causal_apply(y, c), _brute_causal(y, c), atol=1e-13)


@pytest.mark.parametrize("n,half", [(16, 3), (10, 12), (31, 8)])
@pytest.mark.parametrize("periodic", [False, True])
def test_two_sided_apply_matches_brute_force(rng, n, half, periodic):
    y = rng.normal(size=n)
    w = rng.normal(size=2 * half + 1)
    if periodic:
        got = _kernels.two_sided_apply_periodic(y, w)
    else:
        got = _kernels.two_sided_apply_zero(y, w)
    assert np.allclose(got, _brute_two_sided(y, w, periodic), atol=1e-12)


@pytest.mark.parametrize("p", [1, 2, 5])
def test_ar_recurse_matches_brute_force(rng, p):
    x = rng.normal(size=40)
    phi = rng.normal(size=p) * 0.3
    assert np.allclose(_kernels.ar_recurse(x, phi), _brute_ar(x, phi), atol=1e-12)


def test_numba_and_numpy_implementations_agree(rng):
    if _kernels.BACKEND != "numba":
        pytest.skip("numba path disabled")
    y = rng.normal(size=200)
    c = rng.normal(size=64)
    w = rng.normal(size=41)
    phi = np.array([0.4, -0.2])
    pairs = [
        (_kernels._causal_apply_nb, _kernels._causal_apply_np, (y, c)),
        (_kernels._two_sided_zero_nb, _kernels._two_sided_zero_np, (y, w)),
        (_kernels._two_sided_periodic_nb, _kernels._two_sided_periodic_np, (y, w)),
        (_kernels._ar_recurse_nb, _kernels._ar_recurse_np, (y, phi)),
    ]
    for nb_fn, np_fn, args in pairs:
        assert np.allclose(nb_fn(*args), np_fn(*args), atol=1e-12)


def test_ar_recurse_bit_identical_across_backends(rng):
    # both paths accumulate each element in the same lag order
    x = rng.normal(size=500)
    phi = np.array([0.7, -0.4, 0.1])
    assert np.array_equal(_kernels.ar_recurse(x, phi), _kernels._ar_recurse_np(x, phi))
