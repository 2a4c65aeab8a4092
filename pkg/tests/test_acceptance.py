"""Acceptance criteria, one test each, at their stated tolerances.

Each test prints its own PASS/FAIL line; the terminal summary repeats them.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from mophyp import asymptotics, typei, typeii, weights
from mophyp.numcore import VerificationError
from mophyp.weights import validate_params

from conftest import GRID

EXACT = [validate_params(*q) for q in GRID]
FLOAT = [validate_params(*(float(Fraction(v)) for v in q)) for q in GRID]
CONSTANT = validate_params("4/3", "5/3", "2", "5/2")


def report(number, ok, detail=""):
    print(f"criterion {number:>2} {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.mark.criterion(1, "exact type II orthogonality and closed-form integrals, n <= 12, <= 60 s")
def test_criterion_01_exact_orthogonality():
    t0 = time.perf_counter()
    for p in EXACT:
        for n in range(13):
            assert typeii.orthogonality_check(p, n)
            k, j = divmod(n, 2)
            assert typeii.orthogonality_integral(p, n, k, j) == typeii.nonzero_integral(p, n)
    elapsed = time.perf_counter() - t0
    report(1, elapsed <= 60, f"runtime {elapsed:.1f} s")


@pytest.mark.criterion(2, "3F2 coefficients equal recurrence coefficients exactly, n <= 20")
def test_criterion_02_route_equivalence():
    for p in EXACT:
        rc = typeii.recurrence_coeffs(p, 20)
        for n in range(21):
            assert typeii.typeii_coeffs(p, n).coeffs == typeii.typeii_by_recurrence(p, n, rc).coeffs, (str(p), n)
    report(2, True)


@pytest.mark.criterion(3, "beta/alpha/gamma from lambda exactly, n <= 30; constant case exact")
def test_criterion_03_lambda_identities():
    for p in EXACT:
        assert typeii.lambda_identity_check(p, 30)
    rc = typeii.recurrence_coeffs(CONSTANT, 30)
    ok = (
        all(v == Fraction(4, 9) for v in rc.beta[:31])
        and all(v == Fraction(16, 243) for v in rc.alpha[1:31])
        and all(v == Fraction(64, 19683) for v in rc.gamma[1:31])
    )
    report(3, ok)


@pytest.mark.criterion(4, "third-order ODE residual is the zero polynomial, n <= 15")
def test_criterion_04_ode():
    for p in EXACT:
        for n in range(16):
            assert typeii.ode_residual(p, n).is_zero(), (str(p), n)
    report(4, True)


@pytest.mark.criterion(5, "Hahn shifts exact, n <= 15; type I derivative relation <= 1e-8, n <= 6")
def test_criterion_05_hahn():
    for p in EXACT:
        for n in range(16):
            assert typeii.hahn_shift_check(p, n)
    worst = 0.0
    xs = np.linspace(0.05, 0.95, 10)
    for p in EXACT:
        for n in range(1, 7):
            worst = max(worst, max(typei.typei_derivative_relation_check(p, n, x, tol=1e-8) for x in xs))
    report(5, worst <= 1e-8, f"derivative relation residual {worst:.2e}")


@pytest.mark.criterion(6, "type I vanishing, degrees, n-1 sign changes, Rodrigues <= 1e-8")
def test_criterion_06_type_i():
    for p in EXACT:
        for n in range(1, 9):
            pair = typei.typei_pair(p, n)
            ok, norm = typei.typei_orthogonality_check(p, n, pair)
            assert ok and norm != 0
            assert typei.typei_degree_check(pair)
            assert len(typei.sign_changes(p, n, pair=pair)) == n - 1, (str(p), n)
    worst = 0.0
    xs = np.linspace(0.05, 0.95, 10)
    for p in EXACT:
        for n in range(0, 4):  # Q_{n+1} for n + 1 <= 4
            r = typei.rodrigues_eval(p, n, xs)
            f = typei.typei_function_eval(p, n + 1, xs)
            worst = max(worst, float(np.max(np.abs(r - f)) / np.max(np.abs(f))))
    report(6, worst <= 1e-8, f"Rodrigues agreement {worst:.2e}")


@pytest.mark.criterion(7, "Pearson and weight ODE residuals <= 1e-9 at 20 random points")
def test_criterion_07_pearson():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for p in FLOAT:
        xs = rng.uniform(0.0, 1.0, 20)
        for x in xs:
            shift, ode = weights.pearson_checks(p, x)
            worst = max(worst, float(np.max(shift)), float(np.max(ode)))
        worst = max(worst, float(np.max(weights.weight_ode_residual(p, xs))))
    report(7, worst <= 1e-9, f"worst residual {worst:.2e}")


@pytest.mark.criterion(8, "S-fraction equals w0/w1 within 1e-10 on (0.1, 0.9); 0 < g_n < 1")
def test_criterion_08_sfraction():
    xs = np.linspace(0.1, 0.9, 81)
    worst = 0.0
    for p, pe in zip(FLOAT, EXACT):
        cf = weights.ratio_sfraction_converged(p, xs).value
        direct = weights.weight_eval(p, xs, 0) / weights.weight_eval(p, xs, 1)
        worst = max(worst, float(np.max(np.abs(cf / direct - 1))))
        g = weights.sfraction_g(pe, 500)
        assert all(0 < v < 1 for v in g[1:])
    report(8, worst <= 1e-10, f"worst relative gap {worst:.2e}")


@pytest.mark.criterion(9, "zeros: dual oracles <= 1e-8 to n = 40, interlacing, bidiagonal factors n <= 15")
def test_criterion_09_zeros():
    worst = 0.0
    for p in EXACT:
        prev = None
        for n in range(1, 41):
            rep = typeii.zero_report(p, n)
            z = rep.zeros
            worst = max(worst, float(np.max(rep.eig_residual)))
            assert z[0] > 0 and z[-1] < 1
            if prev is not None:
                assert np.all(z[:-1] < prev) and np.all(prev < z[1:]), (str(p), n)
            prev = z
        for n in range(1, 16):
            assert typeii.bidiagonal_check(p, n)
    report(9, worst <= 1e-8, f"worst oracle gap {worst:.2e}")


@pytest.mark.criterion(10, "asymptotic trends and rho branch, <= 120 s")
def test_criterion_10_asymptotics():
    t0 = time.perf_counter()
    z = np.linspace(0, 40, 401)
    points = (-1.0, -0.25, 1.5, 2.0, 5.0, -3.0, 0.5 + 0.5j, 0.5 - 1j, 2 + 1j, -1 - 1j)
    lines = []
    for p in FLOAT:
        ks = [asymptotics.empirical_vs_limit(p, n) for n in (20, 40, 80)]
        mh = [asymptotics.mehler_heine_check(p, n, z) for n in (16, 32, 64)]
        sz = asymptotics.scaled_zero_limit(p, 1, (40, 80, 160)).errors
        for name, seq in (("Kolmogorov", ks), ("Mehler-Heine", mh), ("scaled zero", sz)):
            assert seq[0] > seq[1] > seq[2], (str(p), name, seq)
        ratio_gap = max(abs(asymptotics.empirical_ratio(p, 120, x) - asymptotics.ratio_rho(x)) for x in points)
        assert ratio_gap <= 2e-2, (str(p), ratio_gap)
        lines.append(f"{p}: KS {ks[-1]:.3f}, MH {mh[-1]:.3f}, zero {sz[-1]:.3f}, ratio {ratio_gap:.1e}")
    for x in points:
        rho = asymptotics.ratio_rho(x)
        terms = abs(asymptotics.LIMIT_GAMMA * rho**3) + abs(asymptotics.LIMIT_ALPHA * rho**2) + abs((x - asymptotics.LIMIT_BETA) * rho) + 1
        assert abs(asymptotics._cubic_residual(rho, x)) <= 1e-10 * terms
    elapsed = time.perf_counter() - t0
    print("\n".join(lines))
    report(10, elapsed <= 120, f"runtime {elapsed:.1f} s")


@pytest.mark.criterion(11, "confluence distances fall like 1/scale, n <= 8, both limits")
def test_criterion_11_confluence():
    for p in EXACT:
        for eps in (0, 1):
            for n in range(9):
                typeii.confluence_check(p, n, eps, (10**2, 10**3, 10**4))
    report(11, True)


@pytest.mark.criterion(12, "Jacobi-Pineiro boundary weight and threefold mapping")
def test_criterion_12_degenerations():
    xs = np.linspace(0.01, 0.99, 99)
    worst = 0.0
    for a, b in ((1, 2), (0.5, 1.5), (2, 0.75)):
        general = weights.weight_by_quadruple(float(a), float(b), float(a), float(b) + 1, xs)
        worst = max(worst, float(np.max(np.abs(general / (b * xs ** (b - 1)) - 1))))
        p = validate_params(a, b, a, b + 1, allow_degenerate=True)
        assert np.allclose(weights.weight_eval(p, xs, 0), b * xs ** (b - 1), rtol=1e-15)
    q = typeii.threefold_component_params(1, Fraction(3, 2), 2)
    assert q.quadruple == CONSTANT.quadruple
    rc_q, rc_c = typeii.recurrence_coeffs(q, 30), typeii.recurrence_coeffs(CONSTANT, 30)
    assert rc_q.beta == rc_c.beta and rc_q.alpha == rc_c.alpha and rc_q.gamma == rc_c.gamma
    report(12, worst <= 1e-12, f"boundary weight gap {worst:.2e}")
