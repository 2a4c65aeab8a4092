"""Special-function kernels: Pochhammer, Gauss 2F1 on (-1, 1], terminating pFq, 0F2.

``gauss_2f1`` sums the power series for ``0 <= z <= 1/2``, applies Pfaff's
transformation for negative ``z`` and otherwise maps to ``1 - z`` with the
two-term Gamma connection formula.  When the exponent difference
``gamma - alpha - beta`` is an integer the two terms have poles that cancel;
that case uses the logarithmic expansions.  Within 1e-2 of an integer the
cancellation is still severe and mpmath evaluates those points.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
from scipy import special as sc

__all__ = [
    "HypParams",
    "HypergeometricDomainError",
    "SeriesConvergenceError",
    "pochhammer",
    "gamma_ratio",
    "gauss_2f1",
    "gauss_2f1_one_minus",
    "terminating_pfq",
    "terminating_pfq_coeffs",
    "entire_0f2",
    "smallest_zeros_0f2",
]

_STOP = 1e-17
_MAX_TERMS = 20000
_NEAR_INT = 1e-2


class HypergeometricDomainError(ValueError):
    pass


class SeriesConvergenceError(ArithmeticError):
    def __init__(self, msg, partial):
        super().__init__(msg)
        self.partial = partial


def _is_nonpositive_integer(v) -> bool:
    if isinstance(v, Fraction):
        return v.denominator == 1 and v <= 0
    v = float(v)
    return v <= 0 and v == math.floor(v)


class HypParams:
    """Numerator/denominator parameter lists of a generalised hypergeometric series."""

    def __init__(self, numerator: Sequence, denominator: Sequence):
        for b in denominator:
            if _is_nonpositive_integer(b):
                raise HypergeometricDomainError(
                    f"denominator parameter {b} is a non-positive integer"
                )
        self.numerator = tuple(numerator)
        self.denominator = tuple(denominator)

    def __repr__(self):
        return f"HypParams({list(self.numerator)}, {list(self.denominator)})"


def pochhammer(z, n: int):
    """Rising factorial ``z (z+1) ... (z+n-1)``; exact for rational ``z``.

    >>> pochhammer(Fraction(1, 2), 3)
    Fraction(15, 8)
    """
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    if isinstance(z, int):
        z = Fraction(z)
    acc = z * 0 + 1
    for k in range(n):
        acc = acc * (z + k)
    return acc


def gamma_ratio(num: Sequence[float], den: Sequence[float]) -> float:
    """``prod Gamma(num) / prod Gamma(den)`` evaluated in log space.

    A denominator argument at a pole makes the ratio zero; a numerator
    argument at a pole is a domain error.
    """
    sign = 1.0
    logv = 0.0
    for v in den:
        v = float(v)
        if _is_nonpositive_integer(v):
            return 0.0
        sign *= sc.gammasgn(v)
        logv -= sc.gammaln(v)
    for v in num:
        v = float(v)
        if _is_nonpositive_integer(v):
            raise HypergeometricDomainError(f"Gamma pole at {v}")
        sign *= sc.gammasgn(v)
        logv += sc.gammaln(v)
    return sign * math.exp(logv)


# --------------------------------------------------------------------------
# Gauss 2F1
# --------------------------------------------------------------------------


def _series(a, b, c, z):
    """Power series of 2F1(a, b; c; z) for an array z, |z| < 1."""
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    small_prev = np.zeros(z.shape, dtype=bool)
    for k in range(_MAX_TERMS):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
        small = np.abs(term) <= _STOP * np.abs(total)
        if np.all(small & small_prev):
            return total
        small_prev = small
    raise SeriesConvergenceError("2F1 series did not converge", total)


def _log_series(a, b, m, w, psi_a, psi_b):
    """sum_n (a)_n (b)_n / (n! (n+m)!) w^n [ln w - psi(n+1) - psi(n+m+1) + psi(a+n) + psi(b+n)]."""
    logw = np.log(w)
    coef = 1.0 / math.factorial(m)
    total = np.zeros_like(w)
    psi1 = sc.psi(1.0)
    psi_n1 = psi1
    psi_nm1 = sc.psi(m + 1.0)
    pa, pb = psi_a, psi_b
    wn = np.ones_like(w)
    small_prev = np.zeros(w.shape, dtype=bool)
    for n in range(_MAX_TERMS):
        term = coef * wn * (logw - psi_n1 - psi_nm1 + pa + pb)
        total = total + term
        small = np.abs(term) <= _STOP * np.abs(total)
        if n > 2 and np.all(small & small_prev):
            return total
        small_prev = small
        coef *= (a + n) * (b + n) / ((n + 1.0) * (n + m + 1.0))
        wn = wn * w
        psi_n1 += 1.0 / (n + 1)
        psi_nm1 += 1.0 / (n + m + 1)
        pa += 1.0 / (a + n)
        pb += 1.0 / (b + n)
    raise SeriesConvergenceError("logarithmic 2F1 series did not converge", total)


def _integer_case(a, b, m: int, w):
    """2F1(a, b; a+b+m; 1-w) for integer m and 0 < w <= 1/2."""
    if m >= 0:
        finite = np.zeros_like(w)
        if m > 0:
            pref = gamma_ratio([m, a + b + m], [a + m, b + m])
            coef = 1.0
            for n in range(m):
                finite = finite + coef * w**n
                if n + 1 < m:
                    coef *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n))
            finite = pref * finite
        pref = gamma_ratio([a + b + m], [a, b])
        if pref == 0.0:
            return finite
        logs = _log_series(a + m, b + m, m, w, sc.psi(a + m), sc.psi(b + m))
        return finite - pref * (-w) ** m * logs
    k = -m
    pref = gamma_ratio([k, a + b - k], [a, b])
    finite = np.zeros_like(w)
    coef = 1.0
    for n in range(k):
        finite = finite + coef * w**n
        if n + 1 < k:
            coef *= (a - k + n) * (b - k + n) / ((n + 1.0) * (1.0 - k + n))
    finite = pref * finite * w ** (-k)
    pref2 = gamma_ratio([a + b - k], [a - k, b - k])
    if pref2 == 0.0:
        return finite
    logs = _log_series(a, b, k, w, sc.psi(a), sc.psi(b))
    return finite - (-1) ** k * pref2 * logs


def _connection(a, b, c, w):
    """2F1(a, b; c; 1-w) by the two-term connection formula, non-integer c-a-b."""
    s = c - a - b
    first = gamma_ratio([c, s], [c - a, c - b])
    second = gamma_ratio([c, -s], [a, b])
    out = np.zeros_like(w)
    if first != 0.0:
        out = out + first * _series(a, b, 1.0 - s, w)
    if second != 0.0:
        out = out + second * w**s * _series(c - a, c - b, 1.0 + s, w)
    return out


def _terminating_at(a, b, c, z):
    """Finite sum when a or b is a non-positive integer."""
    n = int(round(-a)) if _is_nonpositive_integer(a) else int(round(-b))
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for k in range(n):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
    return total


def gauss_2f1_one_minus(alpha, beta, gamma, w):
    """``2F1(alpha, beta; gamma; 1 - w)`` for ``0 <= w <= 1``.

    Taking ``w`` rather than ``z`` keeps full relative accuracy as ``z -> 1``.
    ``w = 0`` is allowed when ``gamma - alpha - beta > 0`` (Gauss's sum).
    """
    if _is_nonpositive_integer(gamma):
        raise HypergeometricDomainError(f"gamma = {gamma} is a pole of 2F1")
    a, b, c = float(alpha), float(beta), float(gamma)
    scalar = np.ndim(w) == 0
    w = np.atleast_1d(np.asarray(w, dtype=float))
    if np.any((w < 0) | (w > 1)):
        raise HypergeometricDomainError("argument 1-w must lie in [0, 1]")
    out = np.empty_like(w)
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        out[:] = _terminating_at(a, b, c, 1.0 - w)
        return float(out[0]) if scalar else out

    at_one = w == 0
    if np.any(at_one):
        s = c - a - b
        if s <= 0:
            raise HypergeometricDomainError("2F1 diverges at z = 1 unless gamma - alpha - beta > 0")
        out[at_one] = gamma_ratio([c, s], [c - a, c - b])

    direct = (w >= 0.5) & ~at_one
    if np.any(direct):
        out[direct] = _series(a, b, c, 1.0 - w[direct])

    near = (w < 0.5) & ~at_one
    if np.any(near):
        out[near] = _near_one(a, b, c, w[near])
    return float(out[0]) if scalar else out


def _near_one(a, b, c, w):
    s = c - a - b
    m = round(s)
    offset = s - m
    if offset == 0.0:
        return _integer_case(a, b, int(m), w)
    if abs(offset) >= _NEAR_INT:
        return _connection(a, b, c, w)
    # the two connection terms blow up like 1/offset and cancel; mpmath
    # raises its working precision until the cancellation is resolved
    with mpmath.workdps(20):
        return np.array([float(mpmath.hyp2f1(a, b, c, 1 - mpmath.mpf(v))) for v in w])


def gauss_2f1(alpha, beta, gamma, z):
    """Gauss hypergeometric function ``2F1(alpha, beta; gamma; z)`` for real ``-1 < z <= 1``.

    Accepts scalar or array ``z``.  ``z = 1`` is only defined when
    ``gamma - alpha - beta > 0``.
    """
    if _is_nonpositive_integer(gamma):
        raise HypergeometricDomainError(f"gamma = {gamma} is a pole of 2F1")
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any((z <= -1) | (z > 1)):
        raise HypergeometricDomainError("gauss_2f1 is implemented for -1 < z <= 1")
    out = np.empty_like(z)
    a, b, c = float(alpha), float(beta), float(gamma)
    terminating = _is_nonpositive_integer(a) or _is_nonpositive_integer(b)
    low = (z <= 0.5) & ((z >= 0) | terminating)
    if np.any(low):
        if terminating:
            out[low] = _terminating_at(a, b, c, z[low])
        else:
            out[low] = _series(a, b, c, z[low])
    neg = (z < 0) & ~low
    if np.any(neg):
        # Pfaff: 2F1(a, b; c; z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), z/(z-1) in (0, 1/2)
        zn = z[neg]
        out[neg] = (1 - zn) ** (-a) * gauss_2f1(a, c - b, c, zn / (zn - 1))
    high = z > 0.5
    if np.any(high):
        out[high] = gauss_2f1_one_minus(alpha, beta, gamma, 1.0 - z[high])
    return float(out[0]) if scalar else out


# --------------------------------------------------------------------------
# terminating series
# --------------------------------------------------------------------------


def _termination_order(params: HypParams, n: int | None) -> int:
    if n is not None:
        return n
    for a in params.numerator:
        if _is_nonpositive_integer(a):
            return int(-a)
    raise HypergeometricDomainError("no numerator parameter is a non-positive integer")


def terminating_pfq_coeffs(params: HypParams, n: int | None = None) -> list:
    """Coefficients ``t_k`` of ``z**k``, ``k = 0..n``, of a terminating pFq.

    Exact when every parameter is rational.
    """
    n = _termination_order(params, n)
    one = Fraction(1) if all(isinstance(v, (int, Fraction)) for v in params.numerator + params.denominator) else 1.0
    coeffs = [one]
    term = one
    for k in range(n):
        num = one
        for a in params.numerator:
            num = num * (a + k)
        den = one * (k + 1)
        for b in params.denominator:
            if b + k == 0:
                raise HypergeometricDomainError(
                    f"denominator Pochhammer of {b} vanishes at term {k + 1}"
                )
            den = den * (b + k)
        term = term * num / den
        coeffs.append(term)
    return coeffs


def terminating_pfq(params: HypParams, z, n: int | None = None):
    """Finite sum of the first ``n + 1`` terms of ``pFq(params; z)``."""
    coeffs = terminating_pfq_coeffs(params, n)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * z + c
    return acc


# --------------------------------------------------------------------------
# 0F2
# --------------------------------------------------------------------------


def _entire_0f2_mp(a, b, z, dps: int) -> float:
    with mpmath.workdps(dps):
        a, b, z = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(z)
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        k = 0
        tiny = mpmath.mpf(10) ** (-dps)
        while True:
            term = term * z / ((a + k) * (b + k) * (k + 1))
            total += term
            k += 1
            if k > 10 and abs(term) <= tiny * abs(total) and abs(term) < 1:
                return float(total)
            if k > 100000:
                raise SeriesConvergenceError("0F2 series did not converge", float(total))


def entire_0f2(a, b, z):
    """``0F2(-; a, b; z) = sum z^k / ((a)_k (b)_k k!)`` for real ``z``.

    Summed in double precision; entries whose terms exceed the sum by more
    than six orders of magnitude (large negative ``z``) are resummed in
    multiprecision.
    """
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        raise HypergeometricDomainError("0F2 denominator parameter is a non-positive integer")
    a, b = float(a), float(b)
    scalar = np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=float))
    term = np.ones_like(z)
    total = np.ones_like(z)
    biggest = np.ones_like(z)
    k = 0
    while True:
        term = term * z / ((a + k) * (b + k) * (k + 1.0))
        total = total + term
        biggest = np.maximum(biggest, np.abs(term))
        k += 1
        if k > 5 and np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)) and np.all(np.abs(term) < 1):
            break
        if k > 100000:
            raise SeriesConvergenceError("0F2 series did not converge", total)
    with np.errstate(divide="ignore"):
        loss = biggest / np.abs(total)
    bad = loss > 1e6
    for i in np.flatnonzero(bad):
        # the double sum is unreliable here, so re-estimate the loss from each mp result
        digits = 20 + int(math.log10(biggest[i]))
        while True:
            value = _entire_0f2_mp(a, b, z[i], digits)
            needed = 20 + int(math.log10(biggest[i] / abs(value))) if value != 0 else 2 * digits
            if digits >= needed or digits > 2000:
                break
            digits = needed + 5
        total[i] = value
    return float(total[0]) if scalar else total


def smallest_zeros_0f2(a, b, count: int, *, scan_limit: float = 1e7) -> np.ndarray:
    """First ``count`` positive zeros of ``z -> 0F2(-; a, b; -z)``, increasing.

    The scan runs on a uniform grid in ``z**(1/3)`` (zeros of this entire
    function of order 1/3 are asymptotically equispaced there); each sign
    change is refined by bisection to ``1e-12`` relative width.
    """
    if count < 1:
        raise ValueError("count must be >= 1")

    def f(z):
        return entire_0f2(a, b, -z)

    found: list[float] = []
    step = 0.01
    t = step
    prev_z = 0.0
    prev_f = 1.0
    while len(found) < count:
        z = t**3
        if z > scan_limit:
            raise ArithmeticError(
                f"found {len(found)} zeros of 0F2 in (0, {scan_limit:g}); {count} requested"
            )
        fz = f(z)
        if fz == 0.0:
            found.append(z)
        elif np.sign(fz) != np.sign(prev_f):
            lo, hi, flo = prev_z, z, prev_f
            while hi - lo > 1e-12 * hi:
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if fm == 0.0:
                    lo = hi = mid
                    break
                if np.sign(fm) == np.sign(flo):
                    lo, flo = mid, fm
                else:
                    hi = mid
            found.append(0.5 * (lo + hi))
        prev_z, prev_f = z, fz
        t += step
    return np.array(found[:count])
