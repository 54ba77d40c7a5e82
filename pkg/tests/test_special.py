import math

import numpy as np
import pytest
from scipy import integrate

from smoothcdf.special import (
    hermite_basis,
    hermite_eval,
    log_gamma,
    normal_cdf,
    poisson_log_pmf,
    reg_incomplete_beta,
    reg_lower_gamma,
)


def test_log_gamma_known_values():
    assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-14)
    assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
    assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)


def test_log_gamma_matches_stdlib_across_range():
    # math.lgamma is an independent implementation of the same function
    for z in np.geomspace(1e-3, 1e6, 200):
        assert log_gamma(float(z)) == pytest.approx(math.lgamma(z), rel=1e-12, abs=1e-12)


def test_log_gamma_domain():
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(-2.5)


def test_reg_lower_gamma_closed_forms():
    # gamma(1, x) / Gamma(1) = 1 - exp(-x)
    assert reg_lower_gamma(1.0, 1.0) == pytest.approx(1.0 - math.exp(-1.0), abs=1e-12)
    assert reg_lower_gamma(7.3, 0.0) == 0.0
    # Poisson tail with s = 2: 1 - e^{-1}(1 + 1)
    assert reg_lower_gamma(2.0, 1.0) == pytest.approx(1.0 - 2.0 * math.exp(-1.0), abs=1e-12)


def test_reg_lower_gamma_poisson_complement_identity():
    for lam in (0.1, 1.0, 10.0):
        for k in range(1, 31):
            j = np.arange(k, dtype=float)
            head = np.exp(poisson_log_pmf(j, lam)).sum()
            assert reg_lower_gamma(float(k), lam) + head == pytest.approx(1.0, abs=1e-10)


def test_reg_lower_gamma_monotone_and_domain():
    xs = np.linspace(0.0, 20.0, 200)
    vals = reg_lower_gamma(3.7, xs)
    assert np.all(np.diff(vals) >= 0.0)
    assert np.all((vals >= 0.0) & (vals <= 1.0))
    with pytest.raises(ValueError):
        reg_lower_gamma(0.0, 1.0)
    with pytest.raises(ValueError):
        reg_lower_gamma(2.0, -1.0)
    with pytest.raises(ValueError):
        reg_lower_gamma(float("nan"), 1.0)


def test_normal_cdf_values():
    assert normal_cdf(0.0) == 0.5
    # oracle: Phi(1) = (1 + erf(1/sqrt(2))) / 2
    assert normal_cdf(1.0) == pytest.approx(0.5 * (1.0 + math.erf(1.0 / math.sqrt(2.0))),
                                            abs=1e-14)
    assert normal_cdf(-1.0) == pytest.approx(1.0 - normal_cdf(1.0), abs=1e-14)


def test_reg_incomplete_beta():
    assert reg_incomplete_beta(3.0, 3.0, 0.0) == 0.0
    assert reg_incomplete_beta(3.0, 3.0, 0.5) == pytest.approx(0.5, abs=1e-12)
    # Beta(3,3) CDF is the polynomial 10x^3 - 15x^4 + 6x^5
    x = 0.4
    poly = 10.0 * x**3 - 15.0 * x**4 + 6.0 * x**5
    assert poly == pytest.approx(0.31744, abs=1e-12)
    assert reg_incomplete_beta(3.0, 3.0, 0.4) == pytest.approx(poly, abs=1e-10)
    with pytest.raises(ValueError):
        reg_incomplete_beta(0.0, 1.0, 0.5)
    with pytest.raises(ValueError):
        reg_incomplete_beta(1.0, 1.0, 1.5)


def _hermite_direct(x, k):
    # physicists' Hermite polynomial through numpy's basis, an
    # implementation independent of the package recurrence
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    hk = np.polynomial.hermite.hermval(x, coef)
    norm = math.sqrt(2.0**k * math.factorial(k) * math.sqrt(math.pi))
    return np.exp(-0.5 * x**2) * hk / norm


def test_hermite_values_at_zero():
    ev = hermite_eval(0.0, 1)
    assert ev.values[0] == pytest.approx(math.pi ** (-0.25), abs=1e-15)
    assert ev.values[1] == 0.0
    assert np.all(ev.cumulative_integrals == 0.0)


def test_hermite_recurrence_matches_direct_polynomials():
    xs = np.linspace(-4.0, 6.0, 41)
    values, _ = hermite_basis(xs, 10)
    for k in range(11):
        direct = _hermite_direct(xs, k)
        assert np.allclose(values[k], direct, rtol=1e-8, atol=1e-12)


def test_hermite_orthonormality_by_quadrature():
    t, w = np.polynomial.legendre.leggauss(400)
    xs = 12.0 * t
    ww = 12.0 * w
    values, _ = hermite_basis(xs, 10)
    gram = (values * ww) @ values.T
    assert np.allclose(gram, np.eye(11), atol=1e-9)


def test_hermite_integral_ladder_matches_quadrature():
    for x in (0.5, 1.0, 3.0):
        _, integrals = hermite_basis(np.array([x]), 30)
        for k in (0, 1, 2, 7, 15, 30):
            oracle, _ = integrate.quad(lambda t, kk=k: float(hermite_basis(np.array([t]), kk)[0][kk][0]),
                                       0.0, x, limit=200)
            assert integrals[k, 0] == pytest.approx(oracle, abs=1e-9)


def test_hermite_uniform_bound():
    xs = np.linspace(-12.0, 12.0, 2001)
    values, _ = hermite_basis(xs, 60)
    assert np.max(np.abs(values)) <= 0.816


def test_functions_are_pure():
    assert reg_lower_gamma(3.3, 2.2) == reg_lower_gamma(3.3, 2.2)
    a = hermite_eval(1.3, 12)
    b = hermite_eval(1.3, 12)
    assert np.array_equal(a.values, b.values)
    assert np.array_equal(a.cumulative_integrals, b.cumulative_integrals)
