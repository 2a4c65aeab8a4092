from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mophyp.numcore import (
    Poly,
    QuadratureError,
    VerificationError,
    aberth,
    float_tolerance,
    hessenberg_eigenvalues,
    poly_roots,
    tanh_sinh_integrate,
    to_scalar,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=50)
exact_polys = st.lists(fractions, min_size=0, max_size=11).map(Poly)


def test_scalar_parsing_picks_backend():
    assert to_scalar("4/3") == Fraction(4, 3)
    assert to_scalar("7") == Fraction(7)
    assert to_scalar(3) == Fraction(3)
    assert isinstance(to_scalar("2.5"), float)
    with pytest.raises(TypeError):
        to_scalar(True)


def test_poly_basics():
    x = Poly.x()
    P = x * x - Fraction(1, 6) * x
    assert P.degree == 2
    assert P.leading == 1
    assert str(x - Fraction(1, 6)) == "x - 1/6"
    assert Poly().is_zero() and Poly([0, 0]).is_zero()
    assert Poly().degree == -1
    assert P.is_exact() and not P.to_float().is_exact()
    assert P(Fraction(1, 2)) == Fraction(1, 6)


@given(exact_polys, exact_polys)
def test_product_rule(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(exact_polys, exact_polys, fractions)
def test_evaluation_is_a_ring_map(p, q, t):
    assert (p * q)(t) == p(t) * q(t)
    assert (p + q)(t) == p(t) + q(t)


@given(st.lists(fractions, min_size=1, max_size=21).map(Poly), st.lists(fractions, min_size=1, max_size=21).map(Poly))
def test_product_rule_high_degree(p, q):
    lhs = (p * q).derivative(2)
    rhs = p.derivative(2) * q + 2 * (p.derivative() * q.derivative()) + p * q.derivative(2)
    assert lhs == rhs


def test_integrates_endpoint_singularities():
    val, err = tanh_sinh_integrate(lambda x: x**-0.5)
    assert abs(val - 2) < 1e-12
    val, _ = tanh_sinh_integrate(lambda x, xc: xc**-0.75, with_complement=True)
    assert abs(val - 4) < 1e-11
    val, _ = tanh_sinh_integrate(lambda x: np.log(x))
    assert abs(val + 1) < 1e-12


def test_integrates_several_functions_at_once():
    val, _ = tanh_sinh_integrate(lambda x: np.stack([x, x**2], axis=-1))
    assert np.allclose(val, [0.5, 1 / 3], atol=1e-13)


def test_quadrature_reports_nonconvergence():
    with pytest.raises(QuadratureError):
        tanh_sinh_integrate(lambda x: np.sin(1 / x) / x, max_level=3)


@pytest.mark.parametrize(
    "roots",
    [[1, 2, 3], [Fraction(1, 3), Fraction(1, 2)], [-1, 0.5, 2, 7], [1e-3, 1e-2, 0.1, 1]],
)
def test_poly_roots_recovers_known_roots(roots):
    x = Poly.x(Fraction(1) if all(isinstance(r, (int, Fraction)) for r in roots) else 1.0)
    P = Poly.constant(x[1])
    for r in roots:
        P = P * (x - r)
    got = np.sort(poly_roots(P).real)
    assert np.allclose(got, np.sort([float(r) for r in roots]), rtol=1e-10, atol=0)


def test_poly_roots_complex_pair():
    z = np.sort_complex(poly_roots(Poly([1, 0, 1])))
    assert np.allclose(z, [-1j, 1j])


def test_poly_roots_clustered_needs_higher_precision():
    # Wilkinson-like cluster: double precision alone cannot certify these
    x = Poly.x()
    P = Poly.constant(Fraction(1))
    for k in range(1, 16):
        P = P * (x - k)
    got = np.sort(poly_roots(P).real)
    assert np.allclose(got, np.arange(1, 16), rtol=1e-10)


def test_aberth_on_callable():
    def f(z):
        return z**3 - 1, 3 * z**2

    init = 0.4 + 0.9 * np.exp(1j * (np.arange(3) + 0.25) * 2 * np.pi / 3)
    z, _ = aberth(f, init)
    assert np.allclose(np.abs(z), 1) and np.allclose(z**3, 1)


def test_hessenberg_eigenvalues_small():
    assert np.allclose(np.sort(hessenberg_eigenvalues([[2.0, 1.0], [1.0, 2.0]]).real), [1, 3])
    H = np.array([[0.5, 1.0, 0.0], [0.1, 0.5, 1.0], [0.01, 0.1, 0.5]])
    assert np.allclose(np.sort_complex(hessenberg_eigenvalues(H)), np.sort_complex(np.linalg.eigvals(H)))
    with pytest.raises(ValueError):
        hessenberg_eigenvalues(np.ones((3, 3)))


def test_float_tolerance_environment(monkeypatch):
    monkeypatch.delenv("MOPHYP_PRECISION", raising=False)
    assert float_tolerance(1e-10) == 1e-10
    monkeypatch.setenv("MOPHYP_PRECISION", "1e-6")
    assert float_tolerance(1e-10) == 1e-6
    monkeypatch.setenv("MOPHYP_PRECISION", "-1")
    with pytest.raises(ValueError):
        float_tolerance(1e-10)


def test_verification_error_carries_witness():
    err = VerificationError("bad", (3, 0.1))
    assert isinstance(err, AssertionError) and err.witness == (3, 0.1)
