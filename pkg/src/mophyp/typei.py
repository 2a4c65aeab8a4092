"""Type I pairs on the step line.

For index n the pair (A_n, B_n) has deg A_n <= floor((n-1)/2) and
deg B_n <= floor(n/2) - 1, and the type I function

    Q_n = A_n w0 + B_n w1

satisfies int x^k Q_n = 0 for k <= n-2 and int x^(n-1) Q_n = 1.

The pairs come from a rising step that is pure polynomial algebra: if
(C, D) is the index-n pair for the shifted parameters (a+1, b+1; d+1, c+2),
then

    [A_{n+1}, B_{n+1}] = ([C, D] Psi - x [C', D'] Phi) / n,

with Phi and Psi the Pearson matrices of (a, b; c, d).  This follows from
differentiating x Phi W_bar = W_bar(shifted) and D(x Phi W_bar) = -Psi W_bar.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .numcore import Poly, VerificationError, float_tolerance
from .weights import Params, moments, validate_params, weight_by_quadruple, weight_eval

__all__ = [
    "TypeIPair",
    "shifted_params",
    "pearson_polys",
    "typei_pair",
    "typei_pair_by_moments",
    "typei_pairing",
    "typei_orthogonality_check",
    "typei_degree_check",
    "typei_function_eval",
    "rodrigues_params",
    "rodrigues_eval",
    "typei_derivative_relation_check",
    "sign_changes",
]


@dataclass(frozen=True)
class TypeIPair:
    n: int
    params: Params
    A: Poly
    B: Poly

    def __call__(self, x):
        return typei_function_eval(self.params, self.n, x, pair=self)


def shifted_params(p: Params) -> Params:
    """(a+1, b+1; d+1, c+2): the quadruple of the shifted weight pair."""
    a, b, c, d = p.quadruple
    return validate_params(a + 1, b + 1, d + 1, c + 2)


def _one(p: Params):
    return Fraction(1) if p.exact else 1.0


def pearson_polys(p: Params):
    """Phi and Psi as 2x2 nested lists of polynomials in x (exact if p is)."""
    a, b, c, d = p.quadruple
    if c == b or d == a:
        raise ValueError("Pearson matrices need c != b and d != a")
    one = _one(p)
    x = Poly.x(one)
    k = lambda v: Poly.constant(one * v)  # noqa: E731
    phi = [
        [k(c * (c + 1) * d / (a * b * (c - b))), k(-(c + 1) * d / (a * (c - b)))],
        [x * (-c * (c + 1) * d * (d + 1) / (a * b * (b + 1) * (d - a))), k((c + 1) * d * (d + 1) / (a * (b + 1) * (d - a)))],
    ]
    psi = [
        [k(-c * (c + 1) * d / (a * (c - b))), k(c * (c + 1) * d / (a * (c - b)))],
        [x * (c * (c + 1) * d**2 * (d + 1) / (a * b * (b + 1) * (d - a))), k(-(c + 1) * d * (d + 1) / ((b + 1) * (d - a)))],
    ]
    return phi, psi


def _rise(p: Params, shifted: TypeIPair) -> TypeIPair:
    n = shifted.n
    phi, psi = pearson_polys(p)
    C, D = shifted.A, shifted.B
    dC, dD = C.derivative(), D.derivative()
    x = Poly.x(_one(p))
    A = (C * psi[0][0] + D * psi[1][0] - x * (dC * phi[0][0] + dD * phi[1][0])) / n
    B = (C * psi[0][1] + D * psi[1][1] - x * (dC * phi[0][1] + dD * phi[1][1])) / n
    return TypeIPair(n + 1, p, A, B)


def typei_pair(p: Params, n: int) -> TypeIPair:
    """(A_n, B_n) by n-1 rising steps from (1, 0) at the n-1 times shifted parameters."""
    if n < 1:
        raise ValueError("n must be >= 1")
    chain = [p]
    for stage in range(n - 1):
        try:
            chain.append(shifted_params(chain[-1]))
        except ValueError as exc:
            raise ValueError(f"shift stage {stage + 1}: {exc}") from exc
    one = _one(p)
    pair = TypeIPair(1, chain[-1], Poly.constant(one), Poly())
    for q in reversed(chain[:-1]):
        pair = _rise(q, pair)
    return pair


def _solve_exact(M, rhs):
    """Gaussian elimination over Fractions (or floats)."""
    n = len(M)
    A = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular moment system")
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col] / A[col][col]
                A[r] = [u - f * v for u, v in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


def typei_pair_by_moments(p: Params, n: int) -> TypeIPair:
    """(A_n, B_n) by solving the n moment conditions directly (independent oracle)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    na, nb = (n + 1) // 2, n // 2
    m0, m1 = moments(p, 2 * n, 0), moments(p, 2 * n, 1)
    one = _one(p)
    M = [[m0[k + i] for i in range(na)] + [m1[k + i] for i in range(nb)] for k in range(n)]
    rhs = [one * 0] * (n - 1) + [one]
    sol = _solve_exact(M, rhs)
    return TypeIPair(n, p, Poly(sol[:na]), Poly(sol[na:]))


def typei_pairing(pair: TypeIPair, k: int, *, with_magnitude: bool = False):
    """``int x^k Q_n`` from the moments; optionally also the sum of |terms|."""
    p = pair.params
    size = k + max(len(pair.A), len(pair.B)) + 1
    m0, m1 = moments(p, size, 0), moments(p, size, 1)
    total, mag = _one(p) * 0, 0.0
    for poly, m in ((pair.A, m0), (pair.B, m1)):
        for i, c in enumerate(poly):
            term = c * m[k + i]
            total = total + term
            mag += abs(float(term))
    return (total, mag) if with_magnitude else total


def typei_orthogonality_check(p: Params, n: int, pair: TypeIPair | None = None):
    """Vanishing pairings for k <= n-2; returns ``(True, int x^(n-1) Q_n)``.

    In float mode the tolerance (1e-10) is relative to the sum of |terms|.
    """
    pair = pair or typei_pair(p, n)
    tol = 0 if p.exact else float_tolerance(1e-10)
    for k in range(n - 1):
        v, mag = typei_pairing(pair, k, with_magnitude=True)
        if abs(v) > tol * mag:
            raise VerificationError(f"int x^{k} Q_{n} = {v}, expected 0", (k, v))
    return True, typei_pairing(pair, n - 1)


def typei_degree_check(pair: TypeIPair) -> bool:
    """deg A_n = floor((n-1)/2) and deg B_n = floor(n/2) - 1 exactly."""
    n = pair.n
    want = ((n - 1) // 2, n // 2 - 1)
    got = (pair.A.degree, pair.B.degree)
    if got != want:
        raise VerificationError(f"degrees (deg A, deg B) = {got}, expected {want}", (n, got, want))
    return True


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def typei_function_eval(p: Params, n: int, x, *, pair: TypeIPair | None = None):
    """Q_n(x) = A_n(x) w0(x) + B_n(x) w1(x) for x in (0, 1)."""
    pair = pair or typei_pair(p, n)
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0) | (x >= 1)):
        raise ValueError("Q_n is evaluated on the open interval (0, 1)")
    A, B = pair.A.to_float(), pair.B.to_float()
    out = A(x) * weight_eval(p, x, 0)
    if not B.is_zero():
        out = out + B(x) * weight_eval(p, x, 1)
    return out


def rodrigues_params(p: Params, n: int) -> tuple:
    """(a+n, b+n; c+floor((n+1)/2)+n, d+floor(n/2)+n): the weight differentiated n times."""
    a, b, c, d = p.quadruple
    return (a + n, b + n, c + (n + 1) // 2 + n, d + n // 2 + n)


_RODRIGUES_MAX = 6


def rodrigues_eval(p: Params, n: int, x, *, return_error: bool = False):
    """Q_{n+1}(x) = (-1)^n / n! * D^n W(x; rodrigues_params(p, n)).

    The n-th derivative is the trinomial Leibniz sum; its cancellation
    (sum of |terms| over |value|, times machine epsilon) is the error estimate.
    A warning is issued where that estimate exceeds 1e-6 relative.
    """
    if not 0 <= n <= _RODRIGUES_MAX:
        raise ValueError(f"Rodrigues evaluation supports 0 <= n <= {_RODRIGUES_MAX}")
    val, mag = weight_by_quadruple(*rodrigues_params(p, n), x, n, with_magnitude=True)
    scale = (-1) ** n / math.factorial(n)
    val = scale * np.asarray(val)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.finfo(float).eps * np.asarray(mag) / np.abs(val) * 8
    if np.any(rel > 1e-6):
        warnings.warn(f"Rodrigues derivative loses accuracy (estimated relative error {np.max(rel):.2g})", RuntimeWarning)
    if np.ndim(x) == 0:
        val, rel = float(val), float(rel)
    return (val, rel) if return_error else val


def typei_derivative_relation_check(p: Params, n: int, x, *, tol: float = 1e-8):
    """Residual of D Q_n(x; a+1, b+1; d+1, c+2) = -n Q_{n+1}(x; a, b; c, d).

    The left side uses A' w + A w' with analytic weight derivatives.  Returns
    the relative residual; raises :class:`VerificationError` above ``tol``.
    """
    q = shifted_params(p)
    left_pair = typei_pair(q, n)
    A, B = left_pair.A.to_float(), left_pair.B.to_float()
    dA, dB = A.derivative(), B.derivative()
    x = float(x)
    terms = [dA(x) * weight_eval(q, x, 0), A(x) * weight_eval(q, x, 0, 1)]
    if not B.is_zero():
        terms += [dB(x) * weight_eval(q, x, 1), B(x) * weight_eval(q, x, 1, 1)]
    lhs = sum(terms)
    rhs = -n * float(typei_function_eval(p, n + 1, x))
    scale = sum(abs(t) for t in terms) + abs(rhs)
    res = abs(lhs - rhs) / scale
    if res > tol:
        raise VerificationError(f"D Q_{n}(shifted) = {lhs} but -{n} Q_{n + 1} = {rhs} at x={x}", (n, x, lhs, rhs))
    return res


# --------------------------------------------------------------------------
# sign changes
# --------------------------------------------------------------------------


def sign_changes(p: Params, n: int, *, grid: int = 2000, pair: TypeIPair | None = None) -> np.ndarray:
    """Locations of the sign changes of Q_n on (0, 1).

    Uniform grid of ``grid`` interior points, refined towards x = 0 by a
    geometric grid down to 1e-12 (the first zeros of Q_n crowd the origin
    like n^-3), bisection at every flip, and flips closer than 1e-9 merged.
    """
    pair = pair or typei_pair(p, n)
    uniform = np.linspace(0, 1, grid + 2)[1:-1]
    near_zero = np.geomspace(1e-12, uniform[0], 200, endpoint=False)
    xs = np.concatenate((near_zero, uniform))
    vals = typei_function_eval(p, n, xs, pair=pair)
    s = np.sign(vals)
    idx = np.flatnonzero(s[:-1] * s[1:] < 0)
    roots = []
    for i in idx:
        lo, hi, slo = xs[i], xs[i + 1], s[i]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            sm = np.sign(typei_function_eval(p, n, mid, pair=pair))
            if sm == 0:
                lo = hi = mid
                break
            if sm == slo:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-15:
                break
        roots.append(0.5 * (lo + hi))
    merged: list[float] = []
    for r in roots:
        if merged and r - merged[-1] < 1e-9:
            merged.pop()  # two flips this close cancel into a touch, not a crossing
            continue
        merged.append(r)
    return np.array(merged)
