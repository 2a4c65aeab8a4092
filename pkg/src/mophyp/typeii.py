"""Type II polynomials on the step line (the 2-orthogonal sequence).

P_n is monic of degree n with

    int x^k P_n w0 = 0  for k < ceil(n/2),    int x^k P_n w1 = 0  for k < floor(n/2),

and is given by a terminating 3F2.  Everything here is exact when the
parameters are rational; the zero finders and large-n evaluators work in
floating point on the recurrence

    P_{n+1} = (x - beta_n) P_n - alpha_n P_{n-1} - gamma_{n-1} P_{n-2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .hyperfun import HypParams, pochhammer, terminating_pfq_coeffs
from .numcore import Poly, VerificationError, aberth, float_tolerance, hessenberg_eigenvalues, to_scalar
from .weights import Params, moments, validate_params

__all__ = [
    "TypeIIPoly",
    "RecCoeffs",
    "ZeroOracleError",
    "ZeroReport",
    "cprime",
    "lambda_coeffs",
    "typeii_coeffs",
    "recurrence_coeffs",
    "recurrence_coeffs_direct",
    "lambda_identity_check",
    "typeii_by_recurrence",
    "hessenberg",
    "bidiagonal_factorization",
    "bidiagonal_check",
    "evaluate",
    "evaluate_scaled",
    "zeros",
    "zero_report",
    "ode_residual",
    "ode_check",
    "hahn_shift_check",
    "orthogonality_integral",
    "nonzero_integral",
    "orthogonality_check",
    "confluent_limit",
    "confluence_distances",
    "confluence_check",
    "threefold_component_params",
    "jacobi_type_poly",
    "constant_case_poly",
]


@dataclass(frozen=True)
class TypeIIPoly:
    n: int
    params: Params
    coeffs: Poly

    def __call__(self, x):
        return self.coeffs(x)

    def __str__(self) -> str:
        return str(self.coeffs)


def _one(p: Params):
    return Fraction(1) if p.exact else 1.0


def cprime(p: Params, n: int):
    """``c + k`` if ``n = 2k - 1``, ``d + k`` if ``n = 2k`` (``n >= -1``)."""
    if n < -1:
        raise ValueError("c'_n is defined for n >= -1")
    if n % 2:
        return p.c + (n + 1) // 2
    return p.d + n // 2


def _floor_c(p: Params, n: int):
    return p.c + n // 2


def _floor_d(p: Params, n: int):
    return p.d + (n - 1) // 2


# --------------------------------------------------------------------------
# explicit form
# --------------------------------------------------------------------------


def typeii_coeffs(p: Params, n: int) -> TypeIIPoly:
    """Monic P_n from the closed-form coefficients of ``x^(n-j)``.

    tau_{n,j} = C(n,j) (-1)^j (a+n-j)_j (b+n-j)_j
                / ((c+floor(n/2)+n-j)_j (d+floor((n-1)/2)+n-j)_j)
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    a, b = p.a, p.b
    C, D = _floor_c(p, n), _floor_d(p, n)
    one = _one(p)
    coeffs = [one * 0] * (n + 1)
    for j in range(n + 1):
        tau = one * comb(n, j) * (-1) ** j
        tau = tau * pochhammer(a + n - j, j) * pochhammer(b + n - j, j)
        tau = tau / (pochhammer(C + n - j, j) * pochhammer(D + n - j, j))
        coeffs[n - j] = tau
    return TypeIIPoly(n, p, Poly(coeffs))


# --------------------------------------------------------------------------
# recurrence coefficients
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RecCoeffs:
    """Recurrence data up to ``n_max``.

    ``beta[n]`` for 0 <= n <= n_max; ``alpha[n]`` and ``gamma[n]`` for
    1 <= n <= n_max + 1 (index 0 holds 0); ``lam[k]`` for 0 <= k <= 3 n_max + 6;
    ``cprime[n + 1]`` holds c'_n for -1 <= n <= n_max + 1.
    """

    beta: tuple
    alpha: tuple
    gamma: tuple
    lam: tuple
    cprime: tuple

    def as_float(self) -> "RecCoeffs":
        f = lambda seq: tuple(float(v) for v in seq)  # noqa: E731
        return RecCoeffs(f(self.beta), f(self.alpha), f(self.gamma), f(self.lam), f(self.cprime))


def lambda_coeffs(p: Params, count: int) -> list:
    """``lambda_0 .. lambda_{count-1}``; ``lambda_0 = lambda_1 = 0``."""
    a, b = p.a, p.b
    zero = _one(p) * 0
    out = []
    for k in range(count):
        n, r = divmod(k, 3)
        cn, cm = cprime(p, n), cprime(p, n - 1)
        if r == 0:
            v = zero if n == 0 else n * (b + n - 1) * (cn - a - 1) / ((cn + n - 2) * (cn + n - 1) * (cm + n - 1))
        elif r == 1:
            v = zero if n == 0 else n * (a + n) * (cm - b) / ((cn + n - 1) * (cm + n - 1) * (cm + n))
        else:
            # at n = 0 the factor (c'_0 - 1) / (c'_0 - 1) cancels (0/0 when d = 1)
            ratio = 1 if n == 0 else (cn - 1) / (cn + n - 1)
            v = (a + n) * (b + n) * ratio / ((cn + n) * (cm + n))
        out.append(v)
    return out


def recurrence_coeffs(p: Params, n_max: int) -> RecCoeffs:
    """beta_n, alpha_n, gamma_n built from the lambda sequence (primary route)."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    lam = lambda_coeffs(p, 3 * n_max + 7)
    zero = _one(p) * 0
    beta = [lam[3 * n] + lam[3 * n + 1] + lam[3 * n + 2] for n in range(n_max + 1)]
    alpha = [zero]
    gamma = [zero]
    for n in range(n_max + 1):
        alpha.append(lam[3 * n + 1] * lam[3 * n + 3] + lam[3 * n + 2] * lam[3 * n + 3] + lam[3 * n + 2] * lam[3 * n + 4])
        gamma.append(lam[3 * n + 2] * lam[3 * n + 4] * lam[3 * n + 6])
    cp = [cprime(p, n) for n in range(-1, n_max + 2)]
    return RecCoeffs(tuple(beta), tuple(alpha), tuple(gamma), tuple(lam), tuple(cp))


def recurrence_coeffs_direct(p: Params, n_max: int) -> tuple:
    """(beta, alpha, gamma) from the closed forms in c'_n (cross-check route).

    Same indexing as :class:`RecCoeffs`.
    """
    a, b = p.a, p.b
    zero = _one(p) * 0

    beta, alpha, gamma = [], [zero], [zero]
    for n in range(n_max + 1):
        cn, cm = cprime(p, n), cprime(p, n - 1)
        first = (n + 1) * (a + n) * (b + n) / ((cm + n) * (cn + n))
        second = zero if n == 0 else n * (a + n - 1) * (b + n - 1) / ((cm + n - 1) * (cn + n - 2))
        beta.append(first - second)
        prev = zero if n == 0 else n * (a + n - 1) * (b + n - 1) / (2 * (cm + n - 1) * (cn + n - 1))
        nxt = (n + 2) * (a + n + 1) * (b + n + 1) / (2 * (cm + n + 1) * (cn + n + 1))
        alpha.append(first * (prev - first + nxt))
        num = pochhammer(_one(p) * (n + 1), 2) * pochhammer(a + n, 2) * pochhammer(b + n, 2)
        num = num * (cn - a) * (cn - b)
        den = pochhammer(cm + n, 3) * pochhammer(cn + n, 3) * pochhammer(cn + n, 2)
        if n > 0:  # (c'_n - 1) / (c'_n + n - 1) is 1 at n = 0, where it may read 0/0
            num, den = num * (cn - 1), den * (cn + n - 1)
        gamma.append(num / den)
    return tuple(beta), tuple(alpha), tuple(gamma)


def lambda_identity_check(p: Params, n_max: int) -> bool:
    """beta/alpha/gamma from lambda agree with the direct closed forms for n <= n_max.

    Raises :class:`VerificationError` naming the first failing identity and n.
    """
    rc = recurrence_coeffs(p, n_max)
    beta, alpha, gamma = recurrence_coeffs_direct(p, n_max)
    tol = 0 if p.exact else float_tolerance(1e-12)
    for n in range(n_max + 1):
        for name, lhs, rhs in (
            ("beta_n", rc.beta[n], beta[n]),
            ("alpha_{n+1}", rc.alpha[n + 1], alpha[n + 1]),
            ("gamma_{n+1}", rc.gamma[n + 1], gamma[n + 1]),
        ):
            if abs(lhs - rhs) > tol * abs(rhs):
                raise VerificationError(f"{name} mismatch at n={n}: {lhs} != {rhs}", (name, n, lhs, rhs))
    return True


def typeii_by_recurrence(p: Params, n: int, rc: RecCoeffs | None = None) -> TypeIIPoly:
    """P_n from P_{-2} = P_{-1} = 0, P_0 = 1 and the four-term recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if rc is None or len(rc.beta) < n:
        rc = recurrence_coeffs(p, max(n - 1, 0))
    one = _one(p)
    x = Poly.x(one)
    prev2, prev1, cur = Poly(), Poly(), Poly.constant(one)
    for k in range(n):
        nxt = (x - rc.beta[k]) * cur - prev1 * rc.alpha[k] - prev2 * (rc.gamma[k - 1] if k >= 1 else 0)
        prev2, prev1, cur = prev1, cur, nxt
    return TypeIIPoly(n, p, cur)


# --------------------------------------------------------------------------
# matrices
# --------------------------------------------------------------------------


def _matrix(rows, exact: bool):
    return np.array(rows, dtype=object if exact else float)


def hessenberg(p: Params, n: int, rc: RecCoeffs | None = None) -> np.ndarray:
    """Truncated lower-Hessenberg matrix H_n (object dtype for exact params)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rc = rc or recurrence_coeffs(p, n)
    zero = _one(p) * 0
    H = [[zero] * n for _ in range(n)]
    for i in range(n):
        H[i][i] = rc.beta[i]
        if i + 1 < n:
            H[i][i + 1] = zero + 1
        if i >= 1:
            H[i][i - 1] = rc.alpha[i]
        if i >= 2:
            H[i][i - 2] = rc.gamma[i - 1]
    return _matrix(H, p.exact)


def bidiagonal_factorization(p: Params, n: int):
    """``H_n = L1 L2 U`` with

    L1 unit lower bidiagonal, subdiagonal ``lambda_{3i}``;
    L2 unit lower bidiagonal, subdiagonal ``lambda_{3i+1}``;
    U upper bidiagonal, diagonal ``lambda_{3i+2}``, superdiagonal 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = lambda_coeffs(p, 3 * n + 3)
    zero = _one(p) * 0
    one = zero + 1
    L1 = [[zero] * n for _ in range(n)]
    L2 = [[zero] * n for _ in range(n)]
    U = [[zero] * n for _ in range(n)]
    for i in range(n):
        L1[i][i] = one
        L2[i][i] = one
        U[i][i] = lam[3 * i + 2]
        if i + 1 < n:
            U[i][i + 1] = one
        if i >= 1:
            L1[i][i - 1] = lam[3 * i]
            L2[i][i - 1] = lam[3 * i + 1]
    return _matrix(L1, p.exact), _matrix(L2, p.exact), _matrix(U, p.exact)


def bidiagonal_check(p: Params, n: int) -> bool:
    """The factor product reproduces H_n and all factor entries are >= 0."""
    L1, L2, U = bidiagonal_factorization(p, n)
    for name, M in (("L1", L1), ("L2", L2), ("U", U)):
        neg = [(i, j) for i in range(n) for j in range(n) if M[i, j] < 0]
        if neg:
            raise VerificationError(f"negative entry in {name} at {neg[0]}", (name, neg[0]))
    prod = L1.dot(L2).dot(U)
    H = hessenberg(p, n)
    tol = 0 if p.exact else float_tolerance(1e-13)
    for i in range(n):
        for j in range(n):
            if abs(prod[i, j] - H[i, j]) > tol:
                raise VerificationError(
                    f"L1 L2 U differs from H_{n} at ({i},{j}): {prod[i, j]} != {H[i, j]}",
                    (i, j, prod[i, j], H[i, j]),
                )
    return True


# --------------------------------------------------------------------------
# evaluation through the recurrence
# --------------------------------------------------------------------------


def _float_rc(p: Params, n: int) -> RecCoeffs:
    return recurrence_coeffs(p.to_float() if p.exact else p, n)


def evaluate_scaled(p: Params, n: int, x, *, derivative: bool = False, rc: RecCoeffs | None = None):
    """Run the recurrence at ``x`` (real or complex array) with renormalisation.

    Returns ``(P_{n-1}, P_n, dP_n, log_scale)`` where the true values are the
    returned mantissas times ``exp(log_scale)``; ``dP_n`` is ``None`` unless
    ``derivative`` is set.  No overflow or underflow for any n.
    """
    rc = rc or _float_rc(p, n)
    x = np.asarray(x)
    dtype = complex if np.iscomplexobj(x) else float
    x = x.astype(dtype)
    one = np.ones_like(x)
    zero = np.zeros_like(x)
    q2, q1, q0 = zero, zero, one
    d2, d1, d0 = zero, zero, zero
    logs = np.zeros(x.shape)
    for k in range(n):
        g = rc.gamma[k - 1] if k >= 1 else 0.0
        nxt = (x - rc.beta[k]) * q0 - rc.alpha[k] * q1 - g * q2
        if derivative:
            dn = q0 + (x - rc.beta[k]) * d0 - rc.alpha[k] * d1 - g * d2
            d2, d1, d0 = d1, d0, dn
        q2, q1, q0 = q1, q0, nxt
        s = np.maximum(np.abs(q0), np.abs(q1))
        if derivative:
            s = np.maximum(s, np.abs(d0))
        s = np.where(s > 0, s, 1.0)
        q2, q1, q0 = q2 / s, q1 / s, q0 / s
        if derivative:
            d2, d1, d0 = d2 / s, d1 / s, d0 / s
        logs = logs + np.log(s)
    return q1, q0, (d0 if derivative else None), logs


def evaluate(p: Params, n: int, x):
    """P_n(x) in floating point by the recurrence (real or complex ``x``)."""
    _, val, _, logs = evaluate_scaled(p, n, x)
    return val * np.exp(logs)


# --------------------------------------------------------------------------
# zeros
# --------------------------------------------------------------------------


class ZeroOracleError(ArithmeticError):
    def __init__(self, msg, first, second):
        super().__init__(msg)
        self.first = first
        self.second = second


@dataclass(frozen=True)
class ZeroReport:
    zeros: np.ndarray
    poly_residual: np.ndarray  # |P_n / P_n'| at each zero (Newton correction)
    eig_residual: np.ndarray  # |zero - eigenvalue of H_n|
    bisection_residual: np.ndarray  # |zero - sign-change bisection root|


_EIG_CHECK_MAX = 40
_EIG_TOL = 1e-8
_BISECT_TOL = 1e-9


def _aberth_zeros(p: Params, n: int, rc: RecCoeffs) -> np.ndarray:
    def fn(z):
        _, val, der, _ = evaluate_scaled(p, n, z, derivative=True, rc=rc)
        return val, der

    theta = 2 * np.pi * (np.arange(n) + 0.25) / n
    init = 0.5 + 0.5 * np.exp(1j * theta)
    z, _ = aberth(fn, init)
    if np.max(np.abs(z.imag)) > 1e-8:
        raise ZeroOracleError("root finder returned non-real zeros", z, None)
    return np.sort(z.real)


def _sign(p, n, x, rc):
    _, val, _, _ = evaluate_scaled(p, n, np.array([x]), rc=rc)
    return np.sign(val[0])


def _bisection_zeros(p: Params, n: int, rc: RecCoeffs, guess: np.ndarray) -> np.ndarray:
    """Refine each zero by bisection inside the bracket between neighbouring midpoints.

    A sign change in every one of the n disjoint brackets certifies n distinct
    real zeros independently of how ``guess`` was obtained.
    """
    edges = np.concatenate(([0.0], 0.5 * (guess[1:] + guess[:-1]), [1.0]))
    lo_all, hi_all = edges[:-1].copy(), edges[1:].copy()
    _, vlo, _, _ = evaluate_scaled(p, n, lo_all, rc=rc)
    _, vhi, _, _ = evaluate_scaled(p, n, hi_all, rc=rc)
    slo, shi = np.sign(vlo), np.sign(vhi)
    bad = np.flatnonzero(slo * shi >= 0)
    if bad.size:
        raise ZeroOracleError(
            f"no sign change of P_{n} in bracket {bad[0]} [{lo_all[bad[0]]}, {hi_all[bad[0]]}]",
            guess,
            None,
        )
    lo, hi = lo_all, hi_all
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        _, vm, _, _ = evaluate_scaled(p, n, mid, rc=rc)
        sm = np.sign(vm)
        left = sm == slo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
        if np.all(hi - lo <= 4 * np.finfo(float).eps * np.abs(hi)):
            break
    return 0.5 * (lo + hi)


def zero_report(p: Params, n: int) -> ZeroReport:
    """Zeros of P_n with residuals from the three oracles.

    The zeros are the Aberth iterates on the recurrence evaluator.  They are
    checked against sign-change bisection (all n) and against the eigenvalues
    of H_n (n <= 40, where the eigenvalue problem is still well conditioned).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rc = _float_rc(p, n)
    if n == 1:
        z = np.array([rc.beta[0]])
    else:
        z = _aberth_zeros(p, n, rc)
    _, val, der, _ = evaluate_scaled(p, n, z, derivative=True, rc=rc)
    poly_res = np.abs(val / der)

    H = hessenberg(p.to_float() if p.exact else p, n, rc)
    eig = hessenberg_eigenvalues(H)
    eig = np.sort(eig.real)
    eig_res = np.abs(z - eig)
    if n <= _EIG_CHECK_MAX and np.max(eig_res) > _EIG_TOL:
        raise ZeroOracleError(
            f"root finder and Hessenberg eigenvalues disagree by {np.max(eig_res):.3g}", z, eig
        )
    bis = z if n == 1 else _bisection_zeros(p, n, rc, z)
    bis_res = np.abs(z - bis)
    if np.max(bis_res / np.maximum(np.abs(z), 1e-300)) > _BISECT_TOL:
        raise ZeroOracleError(
            f"root finder and bisection disagree by {np.max(bis_res):.3g}", z, bis
        )
    if z[0] <= 0 or z[-1] >= 1:
        raise ZeroOracleError("zeros outside (0, 1)", z, eig)
    return ZeroReport(z, poly_res, eig_res, bis_res)


def zeros(p: Params, n: int) -> np.ndarray:
    """Increasing zeros of P_n, dual-oracle checked (see :func:`zero_report`)."""
    return zero_report(p, n).zeros


# --------------------------------------------------------------------------
# differential identities
# --------------------------------------------------------------------------


def ode_residual(p: Params, n: int) -> Poly:
    """Left side of the third-order equation applied to P_n, as a polynomial.

    x^2 (1-x) P''' - x phi P'' + psi_n P' + n lam_n P,
    phi = (c+d+2) x - (a+b+1),  psi_n = ((n-1)(c+d+n) - lam_n) x + ab,
    lam_n = (c + floor(n/2)) (d + floor((n-1)/2)).
    """
    a, b, c, d = p.quadruple
    P = typeii_coeffs(p, n).coeffs
    one = _one(p)
    x = Poly.x(one)
    lam_n = _floor_c(p, n) * _floor_d(p, n)
    phi = x * (c + d + 2) - (a + b + 1)
    psi = x * ((n - 1) * (c + d + n) - lam_n) + a * b
    x2 = x * x
    return (x2 - x2 * x) * P.derivative(3) - x * phi * P.derivative(2) + psi * P.derivative(1) + P * (n * lam_n)


def _poly_is_zero(P: Poly, exact: bool, scale: float = 1.0) -> bool:
    if exact:
        return P.is_zero()
    return all(abs(float(c)) <= float_tolerance(1e-10) * scale for c in P)


def ode_check(p: Params, n: int) -> bool:
    R = ode_residual(p, n)
    if not _poly_is_zero(R, p.exact, max(1.0, max((abs(float(c)) for c in typeii_coeffs(p, n).coeffs), default=1.0))):
        raise VerificationError(f"third-order ODE residual for n={n} is {R}", R)
    return True


def _shift_params(p: Params, target_order: str) -> Params:
    a, b, c, d = p.quadruple
    if target_order == "dc":
        return validate_params(a + 1, b + 1, d + 1, c + 2)
    if target_order == "cd":
        return validate_params(a + 1, b + 1, c + 2, d + 1)
    raise ValueError("target_order must be 'dc' or 'cd'")


def hahn_shift_check(p: Params, n: int, *, target_order: str = "dc") -> bool:
    """D P_{n+1}(a,b;c,d) == (n+1) P_n(a+1,b+1;d+1,c+2), coefficientwise.

    ``target_order="cd"`` tests the variant with (c+2, d+1) instead.
    """
    lhs = typeii_coeffs(p, n + 1).coeffs.derivative()
    rhs = typeii_coeffs(_shift_params(p, target_order), n).coeffs * (n + 1)
    diff = lhs - rhs
    if not _poly_is_zero(diff, p.exact):
        k = next(i for i, c in enumerate(diff) if c != 0)
        raise VerificationError(
            f"Hahn shift fails at n={n}, coefficient of x^{k}: {lhs[k]} != {rhs[k]}", (n, k, lhs[k], rhs[k])
        )
    return True


# --------------------------------------------------------------------------
# orthogonality
# --------------------------------------------------------------------------


def _pairing(P: Poly, m, k: int, one):
    total, mag = one * 0, 0.0
    for i, coef in enumerate(P):
        term = coef * m[k + i]
        total = total + term
        mag += abs(float(term))
    return total, mag


def orthogonality_integral(p: Params, n: int, k: int, j: int, P: Poly | None = None):
    """``int x^k P_n w_j`` from the moments (exact for rational params)."""
    P = P if P is not None else typeii_coeffs(p, n).coeffs
    return _pairing(P, moments(p, k + n + 1, j), k, _one(p))[0]


def nonzero_integral(p: Params, n: int):
    """Closed form of ``int x^k P_n w_j`` at ``n = 2k + j`` (the first non-vanishing pairing)."""
    a, b, c, d = p.quadruple
    one = _one(p)
    k, j = divmod(n, 2)
    fact = one
    for i in range(2, n + 1):
        fact = fact * i
    if j == 0:
        num = fact * pochhammer(a, 2 * k) * pochhammer(b, 2 * k) * pochhammer(d - a, k) * pochhammer(d - b, k)
        den = pochhammer(c, 3 * k) * pochhammer(d, 3 * k) * pochhammer(d + k - 1, 2 * k)
    else:
        num = fact * pochhammer(a, 2 * k + 1) * pochhammer(b + 1, 2 * k)
        num = num * pochhammer(c - a + 1, k) * pochhammer(c - b, k + 1)
        den = pochhammer(c + 1, 3 * k + 1) * pochhammer(c + k, 2 * k + 1) * pochhammer(d, 3 * k + 1)
    return num / den


def orthogonality_check(p: Params, n: int) -> bool:
    """All step-line conditions for P_n, plus the closed form at n = 2k + j.

    Exact for rational params.  In float mode a pairing is a sum of terms
    that cancel, so the tolerance (1e-10) is relative to the sum of |terms|.
    """
    P = typeii_coeffs(p, n).coeffs
    one = _one(p)
    tol = 0 if p.exact else float_tolerance(1e-10)
    m = (moments(p, 2 * n + 1, 0), moments(p, 2 * n + 1, 1))
    for j in (0, 1):
        k = 0
        while 2 * k + j + 1 <= n:
            v, mag = _pairing(P, m[j], k, one)
            if abs(v) > tol * mag:
                raise VerificationError(f"int x^{k} P_{n} w{j} = {v}, expected 0", (k, j, v))
            k += 1
    k, j = divmod(n, 2)
    v, mag = _pairing(P, m[j], k, one)
    expected = nonzero_integral(p, n)
    if abs(v - expected) > tol * mag:
        raise VerificationError(
            f"int x^{k} P_{n} w{j} = {v}, closed form gives {expected}", (k, j, v, expected)
        )
    return True


# --------------------------------------------------------------------------
# confluence
# --------------------------------------------------------------------------


def confluent_limit(a, b, c, n: int, eps: int) -> Poly:
    """Monic ``R_n^(eps)(x; a, b; c)`` from a terminating 2F2.

    R = (-1)^n (a)_n (b)_n / (c')_n * 2F2(-n, c'; a, b; x),  c' = c + floor((n+eps)/2).
    """
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    cp = c + (n + eps) // 2
    coeffs = terminating_pfq_coeffs(HypParams([-n, cp], [a, b]), n)
    pref = (-1) ** n * pochhammer(a, n) * pochhammer(b, n) / pochhammer(cp, n)
    return Poly([pref * t for t in coeffs])


def _rescaled(P: Poly, s) -> list:
    """Coefficients of s^n P(x / s)."""
    n = P.degree
    return [P[i] * s ** (n - i) for i in range(n + 1)]


def confluence_distances(p: Params, n: int, eps: int, scales) -> list:
    """Max coefficient distance between the rescaled P_n and its confluent limit.

    eps = 0 sends d -> scale (limit in (a, b; c)); eps = 1 sends c -> scale
    (limit in (a, b; d - 1)).
    """
    a, b, c, d = p.quadruple
    R = confluent_limit(a, b, c if eps == 0 else d - 1, n, eps)
    out = []
    for s in scales:
        s = Fraction(s) if p.exact and not isinstance(s, float) else s
        q = validate_params(a, b, c, s) if eps == 0 else validate_params(a, b, s, d)
        P = typeii_coeffs(q, n).coeffs
        scaled = _rescaled(P, s)
        out.append(max(abs(float(scaled[i] - R[i])) for i in range(n + 1)))
    return out


@dataclass(frozen=True)
class ConfluenceReport:
    scales: tuple
    distances: tuple
    ok: bool


def confluence_check(p: Params, n: int, eps: int, scales=(10**2, 10**3, 10**4)) -> ConfluenceReport:
    """Distances must fall like 1/scale (ratio of scale * distance within a factor 3)."""
    scales = tuple(scales)
    if any(s2 <= s1 for s1, s2 in zip(scales, scales[1:])):
        raise ValueError("scales must be increasing")
    dist = confluence_distances(p, n, eps, scales)
    ok = True
    # in float mode distances at roundoff level (n <= 1 is exact in theory) count as zero
    a, b, c, d = p.quadruple
    floor = 0.0 if p.exact else 64 * np.finfo(float).eps * max(
        abs(float(t)) for t in confluent_limit(a, b, c if eps == 0 else d - 1, n, eps)
    )
    if max(dist) > floor:
        for (s1, d1), (s2, d2) in zip(zip(scales, dist), zip(scales[1:], dist[1:])):
            if not d2 < d1:
                ok = False
            elif not (1 / 3 <= (s2 * d2) / (s1 * d1) <= 3):
                ok = False
    rep = ConfluenceReport(scales, tuple(dist), ok)
    if not ok:
        raise VerificationError(f"confluence distances {dist} do not decrease like 1/scale", rep)
    return rep


# --------------------------------------------------------------------------
# special parameter families
# --------------------------------------------------------------------------


def threefold_component_params(mu, rho, k: int) -> Params:
    """Parameters of the k-th component (k = 0, 1, 2) of the threefold-symmetric family."""
    mu, rho = to_scalar(mu), to_scalar(rho)
    if k == 0:
        q = (Fraction(1, 3), Fraction(2, 3), (mu + 2) / 3, rho / 3 + 1)
    elif k == 1:
        q = (Fraction(4, 3), Fraction(2, 3), rho / 3 + 1, (mu + 5) / 3)
    elif k == 2:
        q = (Fraction(4, 3), Fraction(5, 3), (mu + 5) / 3, rho / 3 + 2)
    else:
        raise ValueError("k must be 0, 1 or 2")
    return validate_params(*q)


def jacobi_type_poly(p: Params, n: int) -> Poly:
    """P_n for d = c + 1/2 from its own 3F2:

    (-4)^n (a)_n (b)_n / (2c-1+n)_{2n} * 3F2(-n, c+(n-1)/2, c+n/2; a, b; x).
    """
    a, b, c, d = p.quadruple
    if d != c + Fraction(1, 2):
        raise ValueError("the Jacobi-type form needs d = c + 1/2")
    coeffs = terminating_pfq_coeffs(HypParams([-n, c + Fraction(n - 1, 2), c + Fraction(n, 2)], [a, b]), n)
    pref = Fraction(-4) ** n * pochhammer(a, n) * pochhammer(b, n) / pochhammer(2 * c - 1 + n, 2 * n)
    return Poly([pref * t for t in coeffs])


def constant_case_poly(n: int) -> Poly:
    """P_n(x; 4/3, 5/3; 2, 5/2) = (n+1)(n+2)/2 (-4/27)^n 3F2(-n, (n+3)/2, n/2+2; 4/3, 5/3; x)."""
    coeffs = terminating_pfq_coeffs(
        HypParams([-n, Fraction(n + 3, 2), Fraction(n, 2) + 2], [Fraction(4, 3), Fraction(5, 3)]), n
    )
    pref = Fraction((n + 1) * (n + 2), 2) * Fraction(-4, 27) ** n
    return Poly([pref * t for t in coeffs])
