import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mophyp.hyperfun import (
    HypergeometricDomainError,
    HypParams,
    entire_0f2,
    gamma_ratio,
    gauss_2f1,
    gauss_2f1_one_minus,
    pochhammer,
    smallest_zeros_0f2,
    terminating_pfq,
    terminating_pfq_coeffs,
)

mpmath.mp.dps = 40

CASES = [
    (1, 2, 3),
    (0.5, 1.5, 2),
    (1, 1, 2.5),
    (1, 2, 4),  # c - a - b = 1, logarithmic connection
    (2, 3, 4),  # c - a - b = -1
    (0.5, 1, 1.5),  # c - a - b = 0
    (1, 2, 3 + 1e-8),  # just off an integer exponent
    (1, 2, 3 - 3e-7),
    (1.3, 0.7, 2.2),
    (3, 4, 5),
    (0.3, 0.9, 0.2),
    (2, 2, 1),
]
ZS = [-0.9, -0.3, 0.0, 0.1, 0.5, 0.6, 0.9, 0.99, 0.999999, 1 - 1e-12]


@pytest.mark.parametrize("a,b,c", CASES)
def test_gauss_2f1_against_multiprecision(a, b, c):
    for z in ZS:
        ref = mpmath.hyp2f1(a, b, c, z)
        got = gauss_2f1(a, b, c, z)
        assert abs(got - ref) <= 1e-12 * abs(ref), (a, b, c, z, got, float(ref))


def test_gauss_2f1_vectorised():
    z = np.array([0.1, 0.5, 0.95])
    got = gauss_2f1(0.5, 1.5, 2.25, z)
    ref = [float(mpmath.hyp2f1(0.5, 1.5, 2.25, v)) for v in z]
    assert np.allclose(got, ref, rtol=1e-13, atol=0)


def test_log_two():
    # z 2F1(1, 1; 2; -z) = ln(1 + z), and 2F1(1, 1; 2; 1/2) = 2 ln 2
    assert abs(2 * math.log(2) - gauss_2f1(1, 1, 2, 0.5)) < 1e-14
    z = 1 - 1e-12
    assert abs(z * gauss_2f1(1, 1, 2, -z) - math.log1p(z)) < 1e-14


def test_gauss_sum_at_one():
    a, b, c = 0.3, 0.8, 2.5
    expect = gamma_ratio([c, c - a - b], [c - a, c - b])
    assert abs(gauss_2f1(a, b, c, 1.0) - expect) <= 1e-13 * expect


def test_one_minus_form_keeps_small_argument_exact():
    w = 1e-14
    got = gauss_2f1_one_minus(1, 2, 3.5, w)
    ref = mpmath.hyp2f1(1, 2, 3.5, 1 - mpmath.mpf(w))
    assert abs(got - ref) <= 1e-13 * abs(ref)


@given(
    st.floats(0.1, 3),
    st.floats(0.1, 3),
    st.floats(0.3, 4),
    st.floats(0.01, 0.95),
)
def test_symmetry_and_contiguity(a, b, c, z):
    f = lambda a_, b_, c_: gauss_2f1(a_, b_, c_, z)  # noqa: E731
    assert abs(f(a, b, c) - f(b, a, c)) <= 1e-12 * abs(f(a, b, c))
    # Gauss contiguous relation in c
    lhs = c * (c - 1) * (z - 1) * f(a, b, c - 1) + c * (c - 1 - (2 * c - a - b - 1) * z) * f(a, b, c)
    rhs = -(c - a) * (c - b) * z * f(a, b, c + 1)
    scale = abs(c * (c - 1) * (z - 1) * f(a, b, c - 1)) + abs(c * (c - 1 - (2 * c - a - b - 1) * z) * f(a, b, c)) + abs(rhs)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_domain_errors():
    with pytest.raises(HypergeometricDomainError):
        gauss_2f1(1, 2, 3, 1.5)
    with pytest.raises(HypergeometricDomainError):
        gauss_2f1(1, 2, 2.5, 1.0)  # c - a - b < 0 diverges at 1
    with pytest.raises(HypergeometricDomainError):
        HypParams([1], [-2])


def test_pochhammer_and_gamma_ratio():
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(5, 0) == 1
    assert abs(gamma_ratio([4.5], [2.5]) - 3.5 * 2.5) < 1e-13
    assert gamma_ratio([1], [0]) == 0.0
    assert abs(gamma_ratio([200.5], [200.0]) - float(mpmath.gamma(200.5) / mpmath.gamma(200))) < 1e-10 * 15


def test_terminating_pfq_exact_and_float_agree():
    params = HypParams([-5, Fraction(7, 3), 2], [Fraction(3, 2), 4])
    coeffs = terminating_pfq_coeffs(params)
    assert len(coeffs) == 6 and all(isinstance(c, Fraction) for c in coeffs)
    z = Fraction(2, 7)
    exact = terminating_pfq(params, z)
    fl = terminating_pfq(HypParams([-5.0, 7 / 3, 2.0], [1.5, 4.0]), 2 / 7)
    assert abs(float(exact) - fl) < 1e-14
    ref = mpmath.hyper([-5, mpmath.mpf(7) / 3, 2], [1.5, 4], mpmath.mpf(2) / 7)
    assert abs(float(exact) - ref) < 1e-15


def test_terminating_pfq_chu_vandermonde():
    # 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
    for n in range(8):
        b, c = Fraction(2, 3), Fraction(9, 4)
        assert terminating_pfq(HypParams([-n, b], [c]), 1) == pochhammer(c - b, n) / pochhammer(c, n)


@pytest.mark.parametrize("z", [0.0, 1.0, -5.0, -100.0, -1000.0, -1e5])
def test_entire_0f2_against_multiprecision(z):
    ref = mpmath.hyper([], [1, 2], z)
    got = entire_0f2(1, 2, z)
    assert abs(got - ref) <= 1e-12 * max(abs(ref), 1e-300) or abs(got - ref) < 1e-14


def test_smallest_zeros_0f2_against_multiprecision():
    zs = smallest_zeros_0f2(1, 2, 3)
    assert np.all(np.diff(zs) > 0)
    for z0 in zs:
        ref = mpmath.findroot(lambda t: mpmath.hyper([], [1, 2], -t), z0)
        assert abs(z0 - ref) <= 1e-10 * abs(ref)


def test_smallest_zeros_0f2_dense_scan():
    a, b = 4 / 3, 5 / 3
    zs = smallest_zeros_0f2(a, b, 2)
    t = np.arange(1e-4, zs[1] ** (1 / 3) + 0.05, 1e-4)
    vals = entire_0f2(a, b, -(t**3))
    flips = t[1:][np.sign(vals[1:]) != np.sign(vals[:-1])] ** 3
    assert len(flips) >= 2
    assert np.allclose(flips[:2], zs, rtol=1e-3)
