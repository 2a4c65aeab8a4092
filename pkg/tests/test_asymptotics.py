from fractions import Fraction

import mpmath
import numpy as np
import pytest

from mophyp.asymptotics import (
    LIMIT_ALPHA,
    LIMIT_BETA,
    LIMIT_GAMMA,
    _cubic_residual,
    density_table,
    empirical_ratio,
    empirical_vs_limit,
    limit_cdf,
    mehler_heine_check,
    mehler_heine_scaled,
    ratio_rho,
    rho_candidates,
    scaled_zero_limit,
    zero_density,
)
from mophyp.hyperfun import pochhammer
from mophyp.typeii import recurrence_coeffs, typeii_coeffs
from mophyp.weights import validate_params

from conftest import grid_params

mpmath.mp.dps = 30
POINTS = (-1.0, -0.25, 1.5, 2.0, 5.0, -3.0, 0.5 + 0.5j, 0.5 - 1j, 2 + 1j, -1 - 1j)


def smallest_cubic_root(x):
    roots = np.roots([LIMIT_GAMMA, LIMIT_ALPHA, -(x - LIMIT_BETA), 1])
    return roots[np.argmin(np.abs(roots))]


@pytest.mark.parametrize("x", POINTS + (1000.0, -1000.0, 1.0001, -1e-4))
def test_rho_matches_cubic_roots(x):
    rho = ratio_rho(x)
    assert abs(rho - smallest_cubic_root(x)) <= 1e-10 * abs(rho)
    scale = abs(LIMIT_GAMMA * rho**3) + abs(LIMIT_ALPHA * rho**2) + abs((x - LIMIT_BETA) * rho) + 1
    assert abs(_cubic_residual(rho, x)) <= 1e-14 * scale


def test_rho_behaves_like_reciprocal():
    for x in (1e3, 1e5, -1e5, 1e4j, 1e8):
        assert abs(ratio_rho(x) * x - 1) < 1e-2
        assert abs(ratio_rho(x) - smallest_cubic_root(x)) <= 1e-10 * abs(ratio_rho(x))


def test_rho_rejects_the_support():
    with pytest.raises(ValueError):
        ratio_rho(0.3)
    assert len(rho_candidates(2.0)) == 9


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_recurrence_limits(p):
    rc = recurrence_coeffs(p.to_float(), 400)
    assert abs(rc.beta[400] - LIMIT_BETA) < 5e-3
    assert abs(rc.alpha[400] - LIMIT_ALPHA) < 1e-3
    assert abs(rc.gamma[400] - LIMIT_GAMMA) < 1e-4


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_ratio_approaches_rho(p):
    worst = max(abs(empirical_ratio(p, 120, x) - ratio_rho(x)) for x in POINTS)
    assert worst <= 2e-2


# ---------------------------------------------------------------- zero distribution


def test_density_is_a_probability_density():
    # right half as u = 1 - x so both endpoints are resolved
    left = mpmath.quad(lambda t: zero_density(float(t), float(1 - t)), [0, 1e-6, 0.5])
    right = mpmath.quad(lambda u: zero_density(float(1 - u), float(u)), [0, 1e-6, 0.5])
    assert abs(left + right - 1) < 1e-10
    tab = density_table()
    assert abs(tab.total_mass - 1) < 1e-12
    assert abs(limit_cdf(1.0) - 1) < 1e-8 and limit_cdf(0.0) == 0


@pytest.mark.parametrize("x", (1e-6, 0.01, 0.3, 0.5, 0.9, 0.999))
def test_cdf_against_quadrature(x):
    ref = mpmath.quad(lambda t: zero_density(float(t), float(1 - t)), [0, x / 2, x])
    assert abs(limit_cdf(x) - ref) < 1e-10


def test_density_matches_table():
    tab = density_table(256)
    assert np.allclose(tab.density, zero_density(tab.grid), rtol=1e-15)
    assert np.all(np.diff(tab.cdf) > 0)


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_kolmogorov_distance_decreases(p):
    d = [empirical_vs_limit(p, n) for n in (20, 40, 80)]
    assert d[0] > d[1] > d[2]


def test_kolmogorov_distance_needs_enough_zeros():
    with pytest.raises(ValueError):
        empirical_vs_limit(validate_params(1, 2, 3, 4), 5)


# ---------------------------------------------------------------- hard edge


@pytest.mark.parametrize("n", (4, 9))
def test_mehler_heine_scaling_matches_exact_arithmetic(n):
    p = validate_params(1, 2, 3, 4)
    a, b, c, d = p.quadruple
    pref = (-1) ** n * pochhammer(c + n // 2, n) * pochhammer(d + (n - 1) // 2, n) / (pochhammer(a, n) * pochhammer(b, n))
    P = typeii_coeffs(p, n).coeffs
    for z in (Fraction(1, 2), Fraction(7), Fraction(30)):
        exact = float(pref * P(z / n**3))
        got = float(mehler_heine_scaled(p, n, float(z))[0])
        assert abs(got - exact) <= 1e-12 * max(1.0, abs(exact))


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_mehler_heine_error_decreases(p):
    z = np.linspace(0, 40, 201)
    e = [mehler_heine_check(p, n, z) for n in (16, 32, 64)]
    assert e[0] > e[1] > e[2]


def test_mehler_heine_large_degree_no_overflow():
    val = mehler_heine_scaled(validate_params(1, 2, 3, 4), 2000, [0.0, 10.0])
    assert np.all(np.isfinite(val))
    assert abs(val[0] - 1) < 1e-2


@pytest.mark.slow
@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_scaled_smallest_zero_converges(p):
    tab = scaled_zero_limit(p, 1, (40, 80, 160))
    e = tab.errors
    assert e[0] > e[1] > e[2]
    assert tab.scaled[-1] == pytest.approx(tab.limit, rel=0.1)


def test_scaled_zero_limit_argument_checks():
    with pytest.raises(ValueError):
        scaled_zero_limit(validate_params(1, 2, 3, 4), 5, (4, 8))
