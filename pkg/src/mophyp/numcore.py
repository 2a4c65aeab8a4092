"""Numerical substrate: scalars, dense polynomials, quadrature, roots, eigenvalues.

Two scalar backends are used throughout the package:

* exact   -- :class:`fractions.Fraction` (ints are promoted), closed under
  ring operations and division, never rounds;
* float   -- Python/numpy ``float64``; every comparison carries a tolerance.

A :class:`Poly` keeps whatever scalars it is given, so the same code path
serves both backends.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence

import mpmath
import numpy as np
import scipy.linalg
from scipy.special import expit

__all__ = [
    "Poly",
    "QuadratureError",
    "RootFindingError",
    "EigenvalueError",
    "VerificationError",
    "float_tolerance",
    "to_scalar",
    "is_exact",
    "tanh_sinh_integrate",
    "aberth",
    "poly_roots",
    "hessenberg_eigenvalues",
]

EPS = np.finfo(float).eps


class QuadratureError(ArithmeticError):
    def __init__(self, msg: str, value: float, err_est: float):
        super().__init__(f"{msg} (last estimate {value!r}, error estimate {err_est:.3g})")
        self.value = value
        self.err_est = err_est


class RootFindingError(ArithmeticError):
    def __init__(self, msg: str, best, residual):
        super().__init__(msg)
        self.best = best
        self.residual = residual


class EigenvalueError(ArithmeticError):
    pass


class VerificationError(AssertionError):
    """An identity check failed; ``witness`` holds the offending index/value."""

    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


def float_tolerance(default: float) -> float:
    """Float-mode tolerance; the MOPHYP_PRECISION environment variable overrides ``default``."""
    raw = os.environ.get("MOPHYP_PRECISION")
    if not raw:
        return default
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"MOPHYP_PRECISION must be a positive number, got {raw!r}") from exc
    if not value > 0:
        raise ValueError(f"MOPHYP_PRECISION must be a positive number, got {raw!r}")
    return value


# --------------------------------------------------------------------------
# scalars
# --------------------------------------------------------------------------


def to_scalar(value) -> Fraction | float:
    """Parse ``value`` into a backend scalar.

    Integers, :class:`Fraction` and strings like ``"4/3"`` or ``"7"`` become
    exact; decimals (``"2.5"``, ``2.5``) become floats.

    >>> to_scalar("4/3")
    Fraction(4, 3)
    >>> to_scalar("2.5")
    2.5
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text or text.lstrip("+-").isdigit():
            return Fraction(text)
        return float(text)
    return float(value)


def is_exact(*values) -> bool:
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in values)


def _is_zero(c) -> bool:
    return c == 0


# --------------------------------------------------------------------------
# polynomials
# --------------------------------------------------------------------------


class Poly:
    """Dense univariate polynomial, coefficients in ascending degree.

    The zero polynomial has no coefficients and degree -1.  Arithmetic is
    exact whenever the coefficients are :class:`Fraction`.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def x(cls, one=Fraction(1)) -> "Poly":
        return cls([one * 0, one])

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self):
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return is_exact(*self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other])
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # ring operations -------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly([other])
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [self.coeffs[0] * 0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci == 0:
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] += ci * cj
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        return Poly(c / scalar for c in self.coeffs)

    def derivative(self, order: int = 1) -> "Poly":
        p = self
        for _ in range(order):
            p = Poly(k * p.coeffs[k] for k in range(1, len(p.coeffs)))
        return p

    def shift_up(self, k: int = 1) -> "Poly":
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return Poly([self.coeffs[0] * 0] * k + list(self.coeffs))

    def compose_affine(self, s, t=0) -> "Poly":
        """Return ``x -> p(s*x + t)``."""
        out = Poly()
        lin = Poly([t, s])
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __call__(self, x):
        """Horner evaluation; works for Fraction, float, complex and arrays."""
        if not self.coeffs:
            return x * 0
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def to_float(self) -> "Poly":
        return Poly(float(c) for c in self.coeffs)

    def as_array(self, dtype=float) -> np.ndarray:
        return np.array([dtype(c) for c in self.coeffs], dtype=dtype)


# --------------------------------------------------------------------------
# quadrature
# --------------------------------------------------------------------------


def _ts_nodes(h: float, t_max: float, odd_only: bool):
    k_max = int(math.ceil(t_max / h))
    k = np.arange(-k_max, k_max + 1)
    if odd_only:
        k = k[k % 2 != 0]
    t = k * h
    u = math.pi * np.sinh(t)
    # x and 1-x computed separately so neither endpoint loses digits
    x = expit(u)
    xc = expit(-u)
    w = h * math.pi * np.cosh(t) * x * xc
    keep = (x > 0) & (xc > 0) & (w > 0)
    return x[keep], xc[keep], w[keep]


def tanh_sinh_integrate(
    f: Callable,
    tol: float = 1e-12,
    *,
    with_complement: bool = False,
    max_level: int = 12,
    t_max: float = 6.5,
):
    """Integrate ``f`` over (0, 1) with the double-exponential rule.

    ``f`` is called on numpy arrays of abscissae.  With
    ``with_complement=True`` it is called as ``f(x, 1 - x)`` where the second
    argument is computed independently, which keeps factors like
    ``(1 - x)**(delta - 1)`` accurate near the right endpoint.  ``f`` may
    return an array of shape ``(N, ...)`` to integrate several functions on
    the same nodes.

    Returns ``(value, err_est)``; ``err_est`` is the difference of the last
    two refinement levels.
    """

    def call(x, xc):
        return np.asarray(f(x, xc) if with_complement else f(x), dtype=float)

    def weighted_sum(x, xc, w):
        vals = call(x, xc)
        wb = w.reshape((-1,) + (1,) * (vals.ndim - 1))
        terms = vals * wb
        terms = np.where(np.isfinite(terms), terms, 0.0)
        return terms.sum(axis=0)

    h = 1.0
    x, xc, w = _ts_nodes(h, t_max, odd_only=False)
    total = weighted_sum(x, xc, w)
    estimate = total
    err = np.inf
    for _level in range(1, max_level + 1):
        h /= 2.0
        x, xc, w = _ts_nodes(h, t_max, odd_only=True)
        total = 0.5 * total + weighted_sum(x, xc, w)
        err = float(np.max(np.abs(total - estimate)))
        estimate = total
        scale = max(1.0, float(np.max(np.abs(estimate))))
        if _level >= 3 and err <= tol * scale:
            value = float(estimate) if np.ndim(estimate) == 0 else estimate
            return value, err
    value = float(estimate) if np.ndim(estimate) == 0 else estimate
    raise QuadratureError("tanh-sinh did not converge", value, err)


# --------------------------------------------------------------------------
# roots
# --------------------------------------------------------------------------


def aberth(
    evaluate: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]],
    init: np.ndarray,
    *,
    tol: float = 4 * EPS,
    stall_tol: float = 1e-7,
    maxiter: int = 800,
):
    """Aberth-Ehrlich simultaneous iteration.

    ``evaluate(z)`` returns ``(p(z), p'(z))`` for a complex array ``z``.  A
    root is frozen once its correction drops below ``tol * |z|`` (or becomes
    exactly zero), or once it is below ``stall_tol * |z|`` and no longer
    shrinking (the evaluation noise floor).  Returns ``(roots, iterations)``; raises
    :class:`RootFindingError` if some root has not settled after ``maxiter``
    sweeps.
    """
    z = np.array(init, dtype=complex)
    n = z.size
    active = np.ones(n, dtype=bool)
    last_corr = np.full(n, np.inf)
    for it in range(1, maxiter + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            return z, it - 1
        p, dp = evaluate(z[idx])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[idx, None] - z[None, :]
            diff[np.arange(idx.size), idx] = 1.0
            inv = 1.0 / diff
            inv[np.arange(idx.size), idx] = 0.0
            s = inv.sum(axis=1)
            corr = ratio / (1.0 - ratio * s)
        corr = np.where(np.isfinite(corr), corr, 0.0)
        z[idx] -= corr
        mag = np.abs(corr)
        done = (mag <= tol * np.abs(z[idx])) | (mag == 0.0)
        # no further progress is possible once the correction stops shrinking
        stalled = (mag <= stall_tol * np.abs(z[idx])) & (mag >= 0.5 * last_corr[idx])
        last_corr[idx] = mag
        active[idx[done | stalled]] = False
    if active.any():
        p, _ = evaluate(z)
        raise RootFindingError(
            f"Aberth iteration stagnated after {maxiter} sweeps", z, np.abs(p)
        )
    return z, maxiter


def _initial_circle(coeffs: Sequence[complex]) -> np.ndarray:
    n = len(coeffs) - 1
    a = np.abs(np.asarray(coeffs, dtype=complex))
    lead = a[-1]
    # Cauchy-type radius; arithmetic mean of the root moduli bound
    radius = max(
        (a[k] / lead) ** (1.0 / (n - k)) for k in range(n) if a[k] > 0
    ) if np.any(a[:-1] > 0) else 1.0
    centre = -complex(coeffs[n - 1]) / (n * complex(coeffs[n])) if n > 0 else 0.0
    angles = 2 * np.pi * (np.arange(n) + 0.25) / n + 0.4
    return centre + 0.5 * radius * np.exp(1j * angles)


def _horner_with_derivative(coeffs: np.ndarray):
    def evaluate(z):
        p = np.full_like(z, coeffs[-1], dtype=complex)
        dp = np.zeros_like(z, dtype=complex)
        for c in coeffs[-2::-1]:
            dp = dp * z + p
            p = p * z + c
        return p, dp

    return evaluate


def _horner_error_bound(abs_coeffs: np.ndarray, z: np.ndarray, unit: float):
    r = np.abs(z)
    acc = np.zeros_like(r)
    for c in abs_coeffs[::-1]:
        acc = acc * r + c
    return 2 * len(abs_coeffs) * unit * acc


def _mp_aberth(coeffs, init, dps: int, maxiter: int = 600):
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
              for c in coeffs]
        z = [mpmath.mpc(complex(v)) for v in init]
        n = len(z)
        tol = mpmath.mpf(10) ** (-dps + 5)
        unit = mpmath.mpf(10) ** (-dps)
        abs_cs = [abs(c) for c in cs]
        active = [True] * n
        for _ in range(maxiter):
            if not any(active):
                break
            for i in range(n):
                if not active[i]:
                    continue
                zi = z[i]
                p = cs[-1]
                dp = mpmath.mpc(0)
                bnd = abs_cs[-1]
                for c, ac in zip(cs[-2::-1], abs_cs[-2::-1]):
                    dp = dp * zi + p
                    p = p * zi + c
                    bnd = bnd * abs(zi) + ac
                if p == 0:
                    active[i] = False
                    continue
                ratio = p / dp
                s = mpmath.fsum(1 / (zi - z[j]) for j in range(n) if j != i)
                corr = ratio / (1 - ratio * s)
                z[i] = zi - corr
                # stop at the requested accuracy or once the step is below rounding noise
                noise = 2 * n * unit * bnd / abs(dp) if dp != 0 else mpmath.inf
                if abs(corr) <= max(tol * max(abs(z[i]), tol), noise):
                    active[i] = False
        if any(active):
            raise RootFindingError("multiprecision Aberth stagnated", z, None)
        bounds = []
        for zi in z:
            p = cs[-1]
            dp = mpmath.mpc(0)
            bnd = abs_cs[-1]
            for c, ac in zip(cs[-2::-1], abs_cs[-2::-1]):
                dp = dp * zi + p
                p = p * zi + c
                bnd = bnd * abs(zi) + ac
            newton = abs(p / dp) if dp != 0 else mpmath.inf
            err = 2 * len(cs) * mpmath.mpf(10) ** (-dps) * bnd / abs(dp) if dp != 0 else mpmath.inf
            bounds.append(float(max(newton, err)))
        return np.array([complex(v) for v in z]), np.array(bounds)


def poly_roots(p: Poly, tol: float = 1e-10) -> np.ndarray:
    """All complex roots of ``p`` by Aberth-Ehrlich iteration.

    The double-precision pass is accepted only when a running Horner error
    bound certifies every root to ``tol`` relative accuracy; otherwise the
    iteration is repeated in multiprecision with increasing working
    precision, seeded with the double-precision iterates.
    """
    if p.degree < 1:
        raise ValueError("poly_roots needs degree >= 1")
    coeffs = list(p.coeffs)
    fc = np.array([complex(c) for c in coeffs])
    if p.degree == 1:
        if p.is_exact():
            return np.array([complex(-Fraction(coeffs[0]) / Fraction(coeffs[1]))])
        return np.array([-fc[0] / fc[1]])

    init = _initial_circle(fc)
    try:
        z, _ = aberth(_horner_with_derivative(fc), init)
        evaluate = _horner_with_derivative(fc)
        _, dp = evaluate(z)
        bound = _horner_error_bound(np.abs(fc), z, EPS) / np.abs(dp)
        if np.all(bound <= tol * np.maximum(np.abs(z), tol)):
            return z
    except RootFindingError as exc:
        z = exc.best

    residual = None
    for dps in (30, 60, 120, 240):
        try:
            zm, bounds = _mp_aberth(coeffs, z, dps)
        except RootFindingError as exc:
            residual = exc.residual
            continue
        if np.all(bounds <= tol * np.maximum(np.abs(zm), tol)):
            return zm
        z = zm
        residual = bounds
    raise RootFindingError("roots could not be certified to the requested accuracy", z, residual)


# --------------------------------------------------------------------------
# eigenvalues
# --------------------------------------------------------------------------


def hessenberg_eigenvalues(H) -> np.ndarray:
    """Eigenvalues of a (lower- or upper-) Hessenberg matrix.

    Uses LAPACK's balanced, shifted Hessenberg QR.  The matrix is checked to
    have bandwidth one on the sparse side.
    """
    A = np.asarray(H, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("Hessenberg matrix must be square")
    n = A.shape[0]
    if n == 1:
        return A[0].astype(complex)
    upper_band = np.triu(A, 2)
    lower_band = np.tril(A, -2)
    if np.any(upper_band != 0) and np.any(lower_band != 0):
        raise ValueError("matrix is neither lower nor upper Hessenberg")
    try:
        return scipy.linalg.eigvals(A, check_finite=True)
    except np.linalg.LinAlgError as exc:
        raise EigenvalueError(f"shifted QR failed to converge: {exc}") from exc
