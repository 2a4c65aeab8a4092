"""The hypergeometric weight pair on (0, 1).

For parameters with ``min(c, d) > max(a, b)`` and ``delta = c + d - a - b > 0``

    W(x; a, b; c, d) = K x^(a-1) (1-x)^(delta-1) 2F1(c-b, d-b; delta; 1-x),
    K = Gamma(c) Gamma(d) / (Gamma(a) Gamma(b) Gamma(delta)),

is a probability density with moments (a)_n (b)_n / ((c)_n (d)_n).  The pair
used for the multiple orthogonality is

    w0 = W(x; a, b; c, d),   w1 = W(x; a, b+1; c+1, d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .hyperfun import gamma_ratio, gauss_2f1_one_minus, pochhammer
from .numcore import to_scalar

__all__ = [
    "ParameterError",
    "Params",
    "WeightPair",
    "validate_params",
    "weight_eval",
    "weight_by_quadruple",
    "moment",
    "moments",
    "sfraction_g",
    "sfraction_alpha",
    "ratio_sfraction",
    "ratio_sfraction_converged",
    "weight_ode_residual",
    "phi_matrix",
    "psi_matrix",
    "pearson_checks",
]


class ParameterError(ValueError):
    """Raised when a parameter quadruple violates the admissibility inequalities."""


@dataclass(frozen=True)
class Params:
    a: Fraction | float
    b: Fraction | float
    c: Fraction | float
    d: Fraction | float
    degenerate: bool = False

    @property
    def delta(self):
        return self.c + self.d - self.a - self.b

    @property
    def exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.quadruple)

    @property
    def quadruple(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def second(self) -> tuple:
        """Quadruple of the second weight, (a, b+1; c+1, d)."""
        return (self.a, self.b + 1, self.c + 1, self.d)

    def to_float(self) -> "Params":
        return Params(*(float(v) for v in self.quadruple), degenerate=self.degenerate)

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.quadruple) + ")"


def validate_params(a, b, c, d, *, allow_degenerate: bool = False) -> Params:
    """Build a :class:`Params`, rejecting quadruples outside the admissible region.

    Integers, Fractions and strings like ``"4/3"`` give exact parameters;
    floats give float parameters.  With ``allow_degenerate`` the boundary
    ``c = a, d = b + 1`` (either order of c, d) is admitted.
    """
    a, b, c, d = (to_scalar(v) for v in (a, b, c, d))
    if any(isinstance(v, float) for v in (a, b, c, d)):
        a, b, c, d = (float(v) for v in (a, b, c, d))
    for name, v in zip("abcd", (a, b, c, d)):
        if not v > 0:
            raise ParameterError(f"{name} > 0 violated: {name} = {v}")
    boundary = (c == a and d == b + 1) or (d == a and c == b + 1)
    if boundary and allow_degenerate:
        return Params(a, b, c, d, degenerate=True)
    if not min(c, d) > max(a, b):
        raise ParameterError(
            f"min{{c,d}} > max{{a,b}} violated: min(c,d) = {min(c, d)} <= max(a,b) = {max(a, b)}"
            + (" (boundary case c=a, d=b+1 needs allow_degenerate)" if boundary else "")
        )
    delta = c + d - a - b
    if not delta > 0:
        raise ParameterError(f"delta = c+d-a-b > 0 violated: delta = {delta}")
    return Params(a, b, c, d)


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


def _falling(p: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= p - i
    return out


def _check_unit_interval(x, xc=None):
    x = np.asarray(x, dtype=float)
    xc = 1.0 - x if xc is None else np.asarray(xc, dtype=float)
    if np.any((x <= 0) | (xc <= 0)):
        raise ValueError("weights are evaluated on the open interval (0, 1)")
    return x, xc


def weight_by_quadruple(a, b, c, d, x, deriv_order: int = 0, *, complement=None, with_magnitude=False):
    """``D^k W(x; a, b; c, d)`` by the trinomial Leibniz rule.

    ``complement`` may carry ``1 - x`` computed without rounding (quadrature
    nodes near 1).  Works for any quadruple with ``delta > 0`` (no ordering constraint), which
    is needed for shifted weights sitting on the boundary of the region.
    The hypergeometric factor is differentiated by raising its parameters.
    With ``with_magnitude`` the sum of absolute Leibniz terms is returned as
    well (a cancellation gauge).
    """
    a, b, c, d = (float(v) for v in (a, b, c, d))
    delta = c + d - a - b
    if delta <= 0:
        raise ValueError(f"weight needs delta > 0, got {delta}")
    scalar = np.ndim(x) == 0
    x, xc = _check_unit_interval(
        np.atleast_1d(x), None if complement is None else np.atleast_1d(complement)
    )
    K = gamma_ratio([c, d], [a, b, delta])
    A, B = a - 1.0, delta - 1.0
    al, be, ga = c - b, d - b, delta
    total = np.zeros_like(x)
    magnitude = np.zeros_like(x)
    n = deriv_order
    for k in range(n + 1):
        # D^k F(1-x) = (-1)^k (al)_k (be)_k / (ga)_k F(al+k, be+k; ga+k; 1-x)
        fk = (-1) ** k * pochhammer(al, k) * pochhammer(be, k) / pochhammer(ga, k)
        if fk == 0.0:
            continue
        F = gauss_2f1_one_minus(al + k, be + k, ga + k, x)
        for i in range(n - k + 1):
            j = n - k - i
            coef = math.factorial(n) / (math.factorial(i) * math.factorial(j) * math.factorial(k))
            fi = _falling(A, i)
            fj = (-1) ** j * _falling(B, j)
            if fi == 0.0 or fj == 0.0:
                continue
            term = coef * fi * fj * fk * x ** (A - i) * xc ** (B - j) * F
            total = total + term
            magnitude = magnitude + np.abs(term)
    out = K * total
    if with_magnitude:
        mag = abs(K) * magnitude
        return (float(out[0]), float(mag[0])) if scalar else (out, mag)
    return float(out[0]) if scalar else out


def _power_derivative(scale, p, x, k):
    """D^k of scale * x^p."""
    return scale * _falling(p, k) * x ** (p - k)


def weight_eval(p: Params, x, which: int = 0, deriv_order: int = 0, *, complement=None):
    """``w0`` or ``w1`` (``which`` = 0 or 1) or their first/second derivatives."""
    if which not in (0, 1):
        raise ValueError("which must be 0 or 1")
    if p.degenerate:
        scalar = np.ndim(x) == 0
        xv, _ = _check_unit_interval(
            np.atleast_1d(x), None if complement is None else np.atleast_1d(complement)
        )
        # boundary case: w0 = b x^(b-1), w1 = a x^(a-1)
        s = float(p.b) if which == 0 else float(p.a)
        out = _power_derivative(s, s - 1.0, xv, deriv_order)
        return float(out[0]) if scalar else out
    quad = p.quadruple if which == 0 else p.second()
    return weight_by_quadruple(*quad, x, deriv_order, complement=complement)


@dataclass(frozen=True)
class WeightPair:
    """The pair (w0, w1) for one parameter quadruple."""

    params: Params

    def w0(self, x, deriv_order: int = 0):
        return weight_eval(self.params, x, 0, deriv_order)

    def w1(self, x, deriv_order: int = 0):
        return weight_eval(self.params, x, 1, deriv_order)

    def __call__(self, x):
        return np.array([self.w0(x), self.w1(x)])


# --------------------------------------------------------------------------
# moments
# --------------------------------------------------------------------------


@lru_cache(maxsize=512)
def _moment_table(a, b, c, d, count: int) -> tuple:
    out = []
    m = a * 0 + 1
    for n in range(count):
        out.append(m)
        m = m * (a + n) * (b + n) / ((c + n) * (d + n))
    return tuple(out)


def moments(p: Params, count: int, which: int = 0) -> tuple:
    """First ``count`` moments ``m_0 .. m_{count-1}`` of ``w0`` or ``w1``."""
    quad = p.quadruple if which == 0 else p.second()
    return _moment_table(*quad, count)


def moment(p: Params, n: int, which: int = 0):
    """``(a)_n (b)_n / ((c)_n (d)_n)`` for w0; the (a, b+1; c+1, d) version for w1."""
    if n < 0:
        raise ValueError("moment index must be >= 0")
    a, b, c, d = p.quadruple if which == 0 else p.second()
    return pochhammer(a, n) * pochhammer(b, n) / (pochhammer(c, n) * pochhammer(d, n))


# --------------------------------------------------------------------------
# continued fraction for w0 / w1
# --------------------------------------------------------------------------


def sfraction_g(p: Params, count: int) -> list:
    """``g_0 = 0, g_1, ..., g_{count-1}``."""
    a, b, c, d = p.quadruple
    delta = p.delta
    g = [a * 0]
    for n in range(1, count):
        k = (n - 1) // 2
        if n % 2 == 1:
            g.append((c - b + k) / (delta + 2 * k))
        else:
            g.append((d - b + k) / (delta + 2 * k + 1))
    return g


def sfraction_alpha(p: Params, count: int) -> list:
    """Partial numerators ``alpha_0 = b/c`` and ``alpha_n = (1 - g_{n-1}) g_n``.

    With ``alpha_0 = b/c`` the fraction equals ``w0 / w1`` (at ``x = 1`` the
    ratio of the Gamma prefactors is ``b/c``).
    """
    g = sfraction_g(p, count)
    return [p.b / p.c] + [(1 - g[n - 1]) * g[n] for n in range(1, count)]


@dataclass(frozen=True)
class SFractionResult:
    value: np.ndarray | float
    depth: int
    retries: int


def ratio_sfraction(p: Params, x, depth: int):
    """``alpha_0 / (1 + alpha_1 z / (1 + ... alpha_depth z))`` with ``z = x - 1``.

    Evaluated bottom-up.  A vanishing denominator moves the truncation one
    level deeper; the number of such moves is in ``retries``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    scalar = np.ndim(x) == 0
    z = np.atleast_1d(np.asarray(x, dtype=float)) - 1.0
    retries = 0
    while True:
        al = [float(v) for v in sfraction_alpha(p, depth + 1)]
        tail = np.ones_like(z)
        ok = True
        for n in range(depth, 0, -1):
            tail = 1.0 + al[n] * z / tail
            if np.any(tail == 0.0):
                ok = False
                break
        if ok:
            val = al[0] / tail
            return SFractionResult(float(val[0]) if scalar else val, depth, retries)
        depth += 1
        retries += 1


def ratio_sfraction_converged(p: Params, x, *, tol: float = 1e-12, max_depth: int = 100_000):
    """Double the depth until two truncations agree to ``tol`` (relative)."""
    depth = 8
    first = ratio_sfraction(p, x, depth)
    prev, retries = first.value, first.retries
    while depth < max_depth:
        depth *= 2
        res = ratio_sfraction(p, x, depth)
        cur, retries = res.value, retries + res.retries
        if np.all(np.abs(cur - prev) <= tol * np.abs(cur)):
            return SFractionResult(cur, res.depth, retries)
        prev = cur
    raise ArithmeticError(f"S-fraction not converged at depth {depth}")


# --------------------------------------------------------------------------
# differential identities
# --------------------------------------------------------------------------


def weight_ode_residual(p: Params, x):
    """Relative residual of the second-order equation satisfied by w0.

    (1-x) x^2 W'' + ((c+d-5) x - (a+b-3)) x W' + ((a-1)(b-1) - (c-2)(d-2) x) W,
    divided by the sum of the absolute values of the three terms.
    """
    a, b, c, d = (float(v) for v in p.quadruple)
    x = np.asarray(x, dtype=float)
    W = weight_eval(p, x, 0, 0)
    W1 = weight_eval(p, x, 0, 1)
    W2 = weight_eval(p, x, 0, 2)
    t2 = (1 - x) * x**2 * W2
    t1 = ((c + d - 5) * x - (a + b - 3)) * x * W1
    t0 = ((a - 1) * (b - 1) - (c - 2) * (d - 2) * x) * W
    return np.abs(t2 + t1 + t0) / (np.abs(t2) + np.abs(t1) + np.abs(t0))


def _pearson_guard(p: Params):
    if p.c == p.b or p.d == p.a:
        raise ValueError("Pearson matrices need c != b and d != a")


def phi_matrix(p: Params, x) -> np.ndarray:
    """Matrix ``Phi(x)`` with ``x Phi W_bar(a,b;c,d) = W_bar(a+1,b+1;d+1,c+2)``."""
    _pearson_guard(p)
    a, b, c, d = (float(v) for v in p.quadruple)
    return np.array(
        [
            [c * (c + 1) * d / (a * b * (c - b)), -(c + 1) * d / (a * (c - b))],
            [
                -c * (c + 1) * d * (d + 1) * x / (a * b * (b + 1) * (d - a)),
                (c + 1) * d * (d + 1) / (a * (b + 1) * (d - a)),
            ],
        ]
    )


def _phi_slope(p: Params) -> np.ndarray:
    a, b, c, d = (float(v) for v in p.quadruple)
    return np.array([[0.0, 0.0], [-c * (c + 1) * d * (d + 1) / (a * b * (b + 1) * (d - a)), 0.0]])


def psi_matrix(p: Params, x) -> np.ndarray:
    """Matrix ``Psi(x)`` with ``D(x Phi W_bar) + Psi W_bar = 0``."""
    _pearson_guard(p)
    a, b, c, d = (float(v) for v in p.quadruple)
    return np.array(
        [
            [-c * (c + 1) * d / (a * (c - b)), c * (c + 1) * d / (a * (c - b))],
            [
                c * (c + 1) * d**2 * (d + 1) * x / (a * b * (b + 1) * (d - a)),
                -(c + 1) * d * (d + 1) / ((b + 1) * (d - a)),
            ],
        ]
    )


def _pair_by_quadruple(quad, x, deriv_order=0) -> np.ndarray:
    a, b, c, d = quad
    return np.array(
        [
            weight_by_quadruple(a, b, c, d, x, deriv_order),
            weight_by_quadruple(a, b + 1, c + 1, d, x, deriv_order),
        ]
    )


def pearson_checks(p: Params, x: float, *, target_order: str = "dc"):
    """Relative residuals of the shift identity and the first-order system at ``x``.

    ``target_order`` picks the parameter order of the shifted pair:
    ``"dc"`` is (a+1, b+1; d+1, c+2), ``"cd"`` is (a+1, b+1; c+2, d+1).
    Returns ``(shift_residual, ode_residual)``, each a 2-vector.
    """
    a, b, c, d = p.quadruple
    if target_order == "dc":
        target = (a + 1, b + 1, d + 1, c + 2)
    elif target_order == "cd":
        target = (a + 1, b + 1, c + 2, d + 1)
    else:
        raise ValueError("target_order must be 'dc' or 'cd'")
    x = float(x)
    Wbar = _pair_by_quadruple(p.quadruple, x)
    dWbar = _pair_by_quadruple(p.quadruple, x, 1)
    Phi = phi_matrix(p, x)
    lhs = x * Phi @ Wbar
    rhs = _pair_by_quadruple(target, x)
    shift = np.abs(lhs - rhs) / (x * np.abs(Phi) @ np.abs(Wbar))

    Psi = psi_matrix(p, x)
    deriv = Phi @ Wbar + x * _phi_slope(p) @ Wbar + x * Phi @ dWbar
    terms = [Phi @ Wbar, x * _phi_slope(p) @ Wbar, x * Phi @ dWbar, Psi @ Wbar]
    scale = sum(np.abs(t) for t in terms)
    ode = np.abs(deriv + Psi @ Wbar) / scale
    return shift, ode
