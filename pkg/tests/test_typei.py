from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mophyp.numcore import VerificationError
from mophyp.typei import (
    TypeIPair,
    rodrigues_eval,
    rodrigues_params,
    shifted_params,
    sign_changes,
    typei_degree_check,
    typei_derivative_relation_check,
    typei_function_eval,
    typei_orthogonality_check,
    typei_pair,
    typei_pair_by_moments,
    typei_pairing,
)
from mophyp.typeii import typeii_coeffs
from mophyp.weights import validate_params, weight_eval

from conftest import grid_params

admissible = st.tuples(
    st.fractions(Fraction(1, 4), 3, max_denominator=6),
    st.fractions(Fraction(1, 4), 3, max_denominator=6),
    st.fractions(Fraction(1, 6), 2, max_denominator=6),
    st.fractions(Fraction(1, 6), 2, max_denominator=6),
).map(lambda t: validate_params(t[0], t[1], max(t[0], t[1]) + t[2], max(t[0], t[1]) + t[3]))


def test_shift_order():
    assert shifted_params(validate_params(1, 2, 3, 4)).quadruple == (2, 3, 5, 5)
    assert shifted_params(validate_params("1/2", "3/2", 2, "5/2")).quadruple == (
        Fraction(3, 2),
        Fraction(5, 2),
        Fraction(7, 2),
        4,
    )


def test_first_pairs():
    p = validate_params(1, 2, 3, 4)
    one = typei_pair(p, 1)
    assert one.A.coeffs == (1,) and one.B.is_zero()
    three = typei_pair(p, 3)
    assert list(three.A) == [900, 1000] and list(three.B) == [Fraction(-3200, 3)]


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_rising_operator_matches_moment_solve(p):
    for n in range(1, 9):
        a, b = typei_pair(p, n), typei_pair_by_moments(p, n)
        assert a.A == b.A and a.B == b.B


@given(admissible, st.integers(1, 6))
def test_rising_operator_matches_moment_solve_random(p, n):
    a, b = typei_pair(p, n), typei_pair_by_moments(p, n)
    assert a.A == b.A and a.B == b.B


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_vanishing_pairings_and_normalisation(p):
    for n in range(1, 9):
        ok, norm = typei_orthogonality_check(p, n)
        assert ok and norm == 1
        assert typei_degree_check(typei_pair(p, n))


def test_biorthogonality_with_type_ii():
    # int P_m Q_n = 0 for m < n - 1 and = 1 for m = n - 1
    p = validate_params(1, 2, 3, 4)
    for n in range(1, 7):
        pair = typei_pair(p, n)
        for m in range(n):
            P = typeii_coeffs(p, m).coeffs
            total = sum(c * typei_pairing(pair, i) for i, c in enumerate(P))
            assert total == (1 if m == n - 1 else 0)


def test_float_pairings_are_cancellation_aware():
    p = validate_params(1.0, 2, 3, 4)
    for n in range(1, 9):
        ok, norm = typei_orthogonality_check(p, n)
        _, mag = typei_pairing(typei_pair(p, n), n - 1, with_magnitude=True)
        assert ok and abs(norm - 1) <= 1e-10 * mag


def test_degree_check_flags_wrong_degree():
    p = validate_params(1, 2, 3, 4)
    pair = typei_pair(p, 3)
    bad = TypeIPair(4, p, pair.A, pair.B)
    with pytest.raises(VerificationError):
        typei_degree_check(bad)


def test_function_against_quadrature():
    p = validate_params(1, 2, 3, 4)
    pf = p.to_float()
    pair = typei_pair(p, 4)
    A, B = pair.A.to_float(), pair.B.to_float()

    def Q(t):
        x, xc = float(t), float(1 - t)
        return A(x) * weight_eval(pf, x, 0, complement=xc) + B(x) * weight_eval(pf, x, 1, complement=xc)

    assert abs(float(mpmath.quad(lambda t: t**3 * Q(t), [0, 0.5, 1])) - 1) < 1e-10
    assert abs(float(mpmath.quad(lambda t: t * Q(t), [0, 0.5, 1]))) < 1e-10


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_rodrigues_route(p):
    x = np.linspace(0.05, 0.95, 10)
    for n in range(0, 5):
        r = rodrigues_eval(p, n, x)
        f = typei_function_eval(p, n + 1, x)
        assert np.max(np.abs(r - f)) <= 1e-8 * np.max(np.abs(f))


def test_rodrigues_params_and_limits():
    assert rodrigues_params(validate_params(1, 2, 3, 4), 2) == (3, 4, 6, 7)
    with pytest.raises(ValueError):
        rodrigues_eval(validate_params(1, 2, 3, 4), 7, 0.5)
    val, err = rodrigues_eval(validate_params(1, 2, 3, 4), 2, 0.5, return_error=True)
    assert err < 1e-10


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_derivative_relation(p):
    for n in range(1, 7):
        for x in np.linspace(0.03, 0.97, 10):
            assert typei_derivative_relation_check(p, n, x) <= 1e-8


@pytest.mark.parametrize("p", grid_params(), ids=str)
def test_sign_changes(p):
    for n in range(1, 9):
        s = sign_changes(p, n)
        assert len(s) == n - 1
        assert np.all((s > 0) & (s < 1))


def test_evaluation_domain():
    with pytest.raises(ValueError):
        typei_function_eval(validate_params(1, 2, 3, 4), 2, 1.0)
