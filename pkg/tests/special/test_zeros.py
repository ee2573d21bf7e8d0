"""
This file tests the zeros of J_nu and J_nu'.
"""

import logging
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from pleijel import (
    SolverParams,
    bessel_zero,
    bessel_zero_prime,
    bessel_zeros,
    bessel_zeros_prime,
    mccann_bound,
    mcmahon_zero_guess,
    olver_first_zero_guess,
    zero_guess,
)
from pleijel.errors import CapExceededError
from pleijel.special import GUESS_SLACK, clear_zero_cache, expected_bracket


def bisect(f, lo, hi, steps=200):
    negative_at_lo = f(lo) < 0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if (f(mid) < 0) == negative_at_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_known_zeros():
    assert bessel_zero(0, 1) == pytest.approx(2.404825557695773, rel=1e-12)
    assert bessel_zero(0, 2) == pytest.approx(5.520078110286311, rel=1e-12)
    assert bessel_zero(1, 1) == pytest.approx(3.831705970207512, rel=1e-12)
    assert bessel_zero(3, 1) == pytest.approx(6.380161895923984, rel=1e-12)


def test_half_integer_zeros():
    zeros = bessel_zeros(0.5, 20)
    for k, z in enumerate(zeros, start=1):
        assert z == pytest.approx(k * math.pi, rel=1e-9)


def test_three_halves_zeros():
    # J_{3/2} vanishes where tan x = x, once in each (k pi, k pi + pi/2)
    for k, z in enumerate(bessel_zeros(1.5, 10), start=1):
        oracle = bisect(
            lambda t: math.tan(t) - t, k * math.pi, k * math.pi + math.pi / 2 - 1e-12
        )
        assert z == pytest.approx(oracle, rel=1e-9)


def test_large_order_zero_against_sign_scan():
    # J_100 has no zeros below 100 and consecutive zeros are more than pi apart
    xs = np.arange(100.0, 400.0, 0.05)
    values = special.jv(100, xs)
    changes = np.where(np.sign(values[:-1]) != np.sign(values[1:]))[0]
    i = changes[36]
    oracle = bisect(lambda t: special.jv(100, t), xs[i], xs[i + 1])
    assert bessel_zero(100, 37) == pytest.approx(oracle, rel=1e-9)


def test_derivative_zeros():
    assert bessel_zero_prime(1, 1) == pytest.approx(1.84118, abs=1e-5)
    # J_0' = -J_1, and the trivial zero at the origin is skipped
    assert bessel_zero_prime(0, 1) == pytest.approx(bessel_zero(1, 1), rel=1e-12)
    assert bessel_zero_prime(0, 2) == pytest.approx(bessel_zero(1, 2), rel=1e-12)


def test_zeros_ascending():
    zeros = bessel_zeros(7.3, 30)
    assert all(b - a > 3 for a, b in zip(zeros, zeros[1:]))


@settings(max_examples=50, deadline=None)
@given(
    nu=st.floats(min_value=0, max_value=500),
    k=st.integers(min_value=1, max_value=200),
)
def test_mccann_bound(nu, k):
    assert bessel_zero(nu, k) > mccann_bound(nu, k)


def test_mccann_bound_examples():
    assert mccann_bound(0, 1) == pytest.approx(0.75 * math.pi)
    assert mccann_bound(5, 1) == pytest.approx(math.sqrt(25 + 9 * math.pi**2 / 16))
    assert mccann_bound(200, 74) < bessel_zero(200, 74)


@settings(max_examples=50, deadline=None)
@given(
    nu=st.floats(min_value=0, max_value=50),
    k=st.integers(min_value=1, max_value=20),
)
def test_interlacing(nu, k):
    # j_{nu,k} < j_{nu+1,k} < j_{nu,k+1}
    assert bessel_zero(nu, k) < bessel_zero(nu + 1, k) < bessel_zero(nu, k + 1)


@settings(max_examples=50, deadline=None)
@given(
    nu=st.floats(min_value=0.1, max_value=50),
    k=st.integers(min_value=1, max_value=10),
)
def test_derivative_interlacing(nu, k):
    assert nu <= bessel_zero_prime(nu, 1) < bessel_zero(nu, 1)
    if k > 1:
        assert bessel_zero(nu, k - 1) < bessel_zero_prime(nu, k) < bessel_zero(nu, k)


def test_guesses():
    assert mcmahon_zero_guess(0, 20) == pytest.approx(bessel_zero(0, 20), rel=1e-8)
    assert olver_first_zero_guess(100) == pytest.approx(bessel_zero(100, 1), rel=1e-3)


@pytest.mark.parametrize("nu, k", [(0, 1), (0.5, 3), (2, 1), (100, 1), (100, 5), (500, 1)])
def test_expected_bracket_holds_the_zero(nu, k):
    wall, ceiling = expected_bracket(nu, k)
    assert wall < bessel_zero(nu, k) <= ceiling
    assert ceiling == pytest.approx(zero_guess(nu, k) + GUESS_SLACK)


def test_zero_guess_switches_to_olver_for_the_first_zero():
    assert zero_guess(100, 1) == olver_first_zero_guess(100)
    assert zero_guess(100, 2) == mcmahon_zero_guess(100, 2)
    assert zero_guess(0.5, 1) == mcmahon_zero_guess(0.5, 1)


def test_first_zero_guess_is_logged(caplog):
    with caplog.at_level(logging.DEBUG, logger="pleijel.special"):
        bessel_zeros(42.5, 2, SolverParams(zero_cache=False))
    assert any("first-zero guess off by" in message for message in caplog.messages)


def test_cache_does_not_change_results():
    cached = bessel_zeros(2.5, 15)
    clear_zero_cache()
    uncached = bessel_zeros(2.5, 15, SolverParams(zero_cache=False))
    assert cached == uncached

    # Extending a cached prefix gives the same prefix
    assert bessel_zeros(2.5, 30)[:15] == cached
    assert bessel_zeros_prime(2.5, 5) == bessel_zeros_prime(
        2.5, 5, SolverParams(zero_cache=False)
    )


def test_invalid_index():
    with pytest.raises(ValueError):
        bessel_zero(0, 0)

    with pytest.raises(ValueError):
        bessel_zero(0, 1.5)

    with pytest.raises(ValueError):
        mccann_bound(-1, 1)


def test_zero_cap():
    with pytest.raises(CapExceededError):
        bessel_zeros(0, 10, SolverParams(x_max=10, zero_cache=False))
