import cmath
import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from demoivre.exceptions import DomainError, OutOfRangeError, UnsupportedProbeError
from demoivre.laws import BinomialLaw, CauchyLaw, GaussianReference, atom_grid
from demoivre.probes import GaussianWindowedPolynomial, HermiteFunction, Indicator, gaussian_window
from demoivre.transforms import (
    characteristic_function,
    classical_moment,
    coefficients_from_pgf,
    moment_sequence,
    pgf,
    truncation_radius,
    weak_characteristic_function,
    weak_moment,
)

CAUCHY_WEAK_2 = 0.27472797707261861252  # mpmath, 40 digits
CAUCHY_WEAK_0 = 0.52315658373024674336

laws = st.builds(BinomialLaw, st.integers(1, 200), st.floats(0.01, 0.99))


@given(laws)
def test_pgf_at_one_and_zero(law):
    assert pgf(law, 1) == pytest.approx(1.0, abs=1e-15)
    assert pgf(law, 0) == pytest.approx(law.q**law.n, rel=1e-13)


def test_pgf_direct_expansion():
    law = BinomialLaw(4, 0.5)
    direct = sum(comb(4, k) / 16 * 2**k for k in range(5))
    assert pgf(law, 2) == pytest.approx(5.0625, abs=1e-12)
    assert pgf(law, 2) == pytest.approx(direct, abs=1e-12)


def test_cf_examples():
    assert characteristic_function(BinomialLaw(7, 0.2), 0.0) == 1 + 0j
    assert abs(characteristic_function(BinomialLaw(1, 0.5), math.pi)) < 1e-16


def test_cf_closed_vs_pairing():
    law = BinomialLaw(10, 0.3)
    closed = characteristic_function(law, 0.7)
    direct = sum(comb(10, k) * 0.3**k * 0.7 ** (10 - k) * cmath.exp(0.7j * k) for k in range(11))
    assert abs(closed - characteristic_function(law, 0.7, "pairing")) < 1e-12
    assert abs(closed - direct) < 1e-12


@settings(max_examples=100)
@given(laws, st.floats(-50, 50))
def test_cf_properties(law, t):
    cf = characteristic_function(law, t)
    assert abs(cf - pgf(law, cmath.exp(1j * t))) <= 1e-13
    assert abs(characteristic_function(law, -t) - cf.conjugate()) <= 1e-13
    assert abs(cf) <= 1 + 1e-15


@pytest.mark.parametrize("n", [1, 2, 5, 17, 31, 32, 63, 64])
@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_coefficient_recovery(n, p):
    law = BinomialLaw(n, p)
    np.testing.assert_allclose(coefficients_from_pgf(law), atom_grid(law).weights, atol=1e-10)


def test_coefficient_recovery_needs_enough_roots():
    with pytest.raises(DomainError):
        coefficients_from_pgf(BinomialLaw(8, 0.5), 8)


@pytest.mark.parametrize("law", [BinomialLaw(5, 0.2), BinomialLaw(100, 0.5), BinomialLaw(999, 0.7)], ids=repr)
def test_standardized_low_moments(law):
    seq = moment_sequence(law, 2)
    assert seq.standardized
    assert seq[0] == pytest.approx(1, abs=1e-12)
    assert abs(seq[1]) <= 1e-12
    assert seq[2] == pytest.approx(1, abs=1e-12)


def test_fourth_moment_exact():
    n = 100
    exact = sum(Fraction(comb(n, k), 2**n) * Fraction(k - 50, 5) ** 4 for k in range(n + 1))
    assert exact == Fraction(149, 50)
    assert exact == 3 + Fraction(1 - 6 * Fraction(1, 4), 25)
    assert classical_moment(BinomialLaw(100, 0.5), 4) == pytest.approx(float(exact), abs=1e-10)


def test_odd_moment_symmetric():
    assert abs(classical_moment(BinomialLaw(100, 0.5), 3)) <= 1e-12


def test_raw_moments():
    law = BinomialLaw(40, 0.3)
    assert classical_moment(law, 1, standardized=False) == pytest.approx(12.0, rel=1e-13)
    assert classical_moment(law, 2, standardized=False) == pytest.approx(8.4 + 144.0, rel=1e-13)


def test_moment_order_limit():
    assert math.isfinite(classical_moment(BinomialLaw(50, 0.5), 20))
    with pytest.raises(OutOfRangeError):
        classical_moment(BinomialLaw(50, 0.5), 21)


def test_weak_moment_gaussian_odd():
    assert abs(weak_moment(GaussianReference(), 1, gaussian_window())) <= 1e-10
    assert abs(weak_moment(GaussianReference(), 3, HermiteFunction(2))) <= 1e-10


def cauchy_oracle(r):
    val, _ = quad(lambda x: x**r * math.exp(-x * x / 2) / (math.pi * (1 + x * x)),
                  -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13)
    return val


def test_weak_moment_cauchy_finite():
    # the classical second moment int x^2/(pi(1+x^2)) dx diverges; the windowed one does not
    v = weak_moment(CauchyLaw(), 2, gaussian_window())
    assert math.isfinite(v)
    assert v == pytest.approx(cauchy_oracle(2), abs=1e-8)
    assert v == pytest.approx(CAUCHY_WEAK_2, abs=1e-12)


def test_weak_moment_cauchy_mass():
    v = weak_moment(CauchyLaw(), 0, gaussian_window())
    assert v == pytest.approx(cauchy_oracle(0), abs=1e-8)
    assert v == pytest.approx(CAUCHY_WEAK_0, abs=1e-12)


def test_weak_moment_accepts_callable():
    c = CauchyLaw()
    assert weak_moment(c.density, 2, gaussian_window()) == pytest.approx(CAUCHY_WEAK_2, abs=1e-12)


def test_weak_moment_needs_decay_bound():
    with pytest.raises(UnsupportedProbeError):
        weak_moment(CauchyLaw(), 2, Indicator(-1, 1))


@pytest.mark.parametrize("r", [0, 2, 6])
def test_truncation_radius_is_modest(r):
    radius = truncation_radius(gaussian_window(), r, 1 / math.pi)
    assert 5 < radius < 20


@pytest.mark.parametrize("law", [CauchyLaw(), GaussianReference()], ids=repr)
@pytest.mark.parametrize("window", [gaussian_window(), HermiteFunction(2)], ids=lambda w: w.describe())
def test_weak_cf_at_zero(law, window):
    assert weak_characteristic_function(law, 0.0, window) == pytest.approx(weak_moment(law, 0, window), abs=1e-14)


def test_weak_cf_gaussian_closed_form():
    v = weak_characteristic_function(GaussianReference(), 1.0, gaussian_window())
    assert v == pytest.approx(math.exp(-0.25) / math.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("t", [-3.0, 0.4, 1.0, 7.5])
@pytest.mark.parametrize("law", [CauchyLaw(), GaussianReference()], ids=repr)
def test_weak_cf_symmetric_is_real(law, t):
    assert law.symmetric
    assert abs(weak_characteristic_function(law, t, gaussian_window()).imag) <= 1e-12


def test_weak_cf_normalized():
    law, w = CauchyLaw(), gaussian_window()
    ratio = weak_characteristic_function(law, 0.8, w, normalized=True)
    raw = weak_characteristic_function(law, 0.8, w)
    assert ratio == pytest.approx(raw / weak_moment(law, 0, w), rel=1e-14)


def test_weak_moments_of_gaussian_are_windowed_classical():
    # exp(-x^2/2) times the normal density is proportional to N(0, 1/2)
    law, w = GaussianReference(), gaussian_window()
    base = weak_moment(law, 0, w)
    assert base == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    expected = [1.0, 0.0, 0.5, 0.0, 0.75, 0.0, 1.875]
    got = [weak_moment(law, r, w) / base for r in range(7)]
    np.testing.assert_allclose(got, expected, atol=1e-8)


def test_weak_moment_shifted_cauchy_with_polynomial_window():
    law = CauchyLaw(1.5, 0.7)
    window = GaussianWindowedPolynomial((1.0, 0.5))
    oracle, _ = quad(lambda x: x**3 * (1 + 0.5 * x) * math.exp(-x * x / 2) * law.density(x),
                     -np.inf, np.inf, epsabs=1e-14, epsrel=1e-13)
    assert weak_moment(law, 3, window) == pytest.approx(oracle, abs=1e-8)
