"""Tests for the complex log-gamma core and overflow-safe ratios."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mellinroots import GammaOverflowError, PoleError, gamma_ratio, log_gamma
from mellinroots.gamma import log_gamma_array

# high-precision reference values (40-digit arbitrary-precision evaluation)
LOG_GAMMA_3_4I = complex(-1.756626784603784110530604181623275785157,
                         4.742664438034657928194889407550022740888)
LOG_SQRT_PI = 0.5723649429247000870717136756765293558236
RATIO_125_05_275 = 0.9988790683017599277961293675775693004506


def test_log_gamma_at_one():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)


def test_log_gamma_at_half():
    assert log_gamma(0.5).real == pytest.approx(LOG_SQRT_PI, rel=1e-14)
    assert log_gamma(0.5).imag == 0.0


def test_log_gamma_complex_frozen():
    got = log_gamma(3 + 4j)
    assert abs(got - LOG_GAMMA_3_4I) <= 1e-13 * (1 + abs(LOG_GAMMA_3_4I))


def test_log_gamma_real_positive_is_real():
    rng = np.random.default_rng(1)
    for x in rng.uniform(1e-3, 40.0, size=200):
        assert log_gamma(complex(x)).imag == 0.0


def test_recurrence_bulk():
    # |lg(z+1) - lg(z) - log z| small over 10^4 random right-half-plane points
    rng = np.random.default_rng(2)
    z = rng.uniform(0.5, 50.0, size=10_000) + 1j * rng.uniform(-50.0, 50.0, size=10_000)
    lg = log_gamma_array(z)
    lg1 = log_gamma_array(z + 1.0)
    resid = np.abs(lg1 - lg - np.log(z))
    assert np.all(resid <= 1e-12 * (1.0 + np.abs(lg)))


def test_reflection_identity():
    # Gamma(z) Gamma(1-z) sin(pi z) / pi = 1
    rng = np.random.default_rng(3)
    count = 0
    while count < 2000:
        z = complex(rng.uniform(-10, 10), rng.uniform(-8, 8))
        if abs(z.imag) < 0.05 and abs(z.real - round(z.real)) < 0.05:
            continue
        count += 1
        val = cmath.exp(log_gamma(z) + log_gamma(1 - z)) * cmath.sin(math.pi * z) / math.pi
        assert abs(val - 1.0) <= 1e-10


@settings(max_examples=300, deadline=None)
@given(st.complex_numbers(min_magnitude=1e-3, max_magnitude=40.0,
                          allow_nan=False, allow_infinity=False))
def test_conjugate_symmetry(z):
    if abs(z.imag) < 1e-6 and z.real <= 0.5:
        return  # skip the cut and pole neighborhoods
    assert log_gamma(z.conjugate()) == pytest.approx(log_gamma(z).conjugate(), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("z", [0.0, -1.0, -3.0, -7 + 1e-14j, -2.0 + 0.5e-12])
def test_pole_raises(z):
    with pytest.raises(PoleError):
        log_gamma(z)


def test_gamma_ratio_identity():
    assert gamma_ratio([2.0], [2.0]) == pytest.approx(1.0, rel=1e-14)


def test_gamma_ratio_factorial():
    # Gamma(5)/Gamma(3) = 24/2
    assert gamma_ratio([5.0], [3.0]) == pytest.approx(12.0, rel=1e-13)


def test_gamma_ratio_frozen():
    got = gamma_ratio([1.25, 0.5], [2.75])
    assert got.real == pytest.approx(RATIO_125_05_275, rel=1e-13)
    assert abs(got.imag) <= 1e-14


def test_gamma_ratio_survives_underflowing_factors():
    # high on a vertical line each factor underflows; the ratio is 1/z exactly
    z = 0.5 + 500j
    got = gamma_ratio([z], [z + 1.0])
    assert got == pytest.approx(1.0 / z, rel=1e-12)


def test_gamma_ratio_overflow_raises():
    with pytest.raises(GammaOverflowError):
        gamma_ratio([400.0], [2.0])


def test_gamma_ratio_pole_raises_either_side():
    with pytest.raises(PoleError):
        gamma_ratio([-2.0], [1.0])
    with pytest.raises(PoleError):
        gamma_ratio([1.0], [-2.0])


def test_against_arbitrary_precision_grid():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 30
    rng = np.random.default_rng(4)
    for _ in range(300):
        z = complex(rng.uniform(-20, 20), rng.uniform(-40, 40))
        if min(abs(z + k) for k in range(0, 25)) < 1e-3:
            continue
        ref = mpmath.loggamma(mpmath.mpc(z.real, z.imag))
        ref = complex(float(ref.real), float(ref.imag))
        assert abs(log_gamma(z) - ref) <= 5e-14 * (1.0 + abs(ref))
