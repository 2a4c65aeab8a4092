"""Large-n behaviour of the type II polynomials.

All parameter quadruples share the same limits: the recurrence coefficients
tend to (4/9, 16/243, 64/19683), the ratio P_n / P_{n+1} tends to the root
rho(x) of

    gamma rho^3 + alpha rho^2 - (x - beta) rho + 1 = 0

that behaves like 1/x at infinity, and the normalised zero counting measure
tends to a fixed density on (0, 1).  Near x = 0 the polynomials scale like
n^-3 with a 0F2 limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import PchipInterpolator
from scipy.special import gammaln

from .hyperfun import entire_0f2, smallest_zeros_0f2
from .typeii import evaluate_scaled, zeros
from .weights import Params

__all__ = [
    "LIMIT_BETA",
    "LIMIT_ALPHA",
    "LIMIT_GAMMA",
    "BranchError",
    "DensityTable",
    "rho_candidates",
    "ratio_rho",
    "empirical_ratio",
    "zero_density",
    "density_table",
    "limit_cdf",
    "empirical_vs_limit",
    "mehler_heine_scaled",
    "mehler_heine_check",
    "ScaledZeroTable",
    "scaled_zero_limit",
]

LIMIT_BETA = 4 / 9
LIMIT_ALPHA = 16 / 243
LIMIT_GAMMA = 64 / 19683
_CUBIC_TOL = 1e-10


class BranchError(ArithmeticError):
    def __init__(self, msg, candidates):
        super().__init__(msg)
        self.candidates = candidates


def _cubic_residual(rho, x):
    return LIMIT_GAMMA * rho**3 + LIMIT_ALPHA * rho**2 - (x - LIMIT_BETA) * rho + 1


def rho_candidates(x: complex, *, with_magnitude: bool = False):
    """All nine values of the cube-root expression, one per pair of inner branches.

    ``with_magnitude`` also returns the size of the cancelling terms of each
    value, which bounds its rounding error.
    """
    x = complex(x)
    s = np.sqrt(1 - x + 0j)
    u = (-1 + s) ** (1 / 3)
    v = (-1 - s) ** (1 / 3)
    cube = x ** (1 / 3)
    omega = np.exp(2j * np.pi / 3)
    out = []
    for j1 in range(3):
        for j2 in range(3):
            inner = np.exp(4j * np.pi / 3) * omega**j1 * u + np.exp(2j * np.pi / 3) * omega**j2 * v
            out.append(27 / 4 * (1.5 * cube * inner - 1))
    out = np.array(out)
    if not with_magnitude:
        return out
    mag = 27 / 4 * (1.5 * abs(cube) * (abs(u) + abs(v)) * (1 + abs(s)) + 1)
    return out, np.full(out.shape, mag)


def _newton(rho, x, steps):
    for _ in range(steps):
        slope = 3 * LIMIT_GAMMA * rho**2 + 2 * LIMIT_ALPHA * rho - (x - LIMIT_BETA)
        rho = rho - _cubic_residual(rho, x) / slope
    return rho


def ratio_rho(x: complex) -> complex:
    """Limit of P_n(x) / P_{n+1}(x) for x off [0, 1].

    The branch is chosen by certificate.  Each of the nine cube-root
    combinations gets three Newton steps on the limiting cubic; a candidate
    is kept when those steps only removed rounding (the move stays within
    the rounding bound of the closed form, or 1e-6) and the polished value
    solves the cubic to 1e-10 relative to the size of its terms.  The smallest kept value in modulus (the root behaving like
    1/x) is returned.  Polishing matters for large |x|, where the closed form
    for the small root loses digits to cancellation.
    """
    x = complex(x)
    if x.imag == 0 and 0 <= x.real <= 1:
        raise ValueError("rho is defined off the interval [0, 1]")
    raw, mag = rho_candidates(x, with_magnitude=True)
    cands = _newton(raw, x, 3)
    moved = np.abs(cands - raw) / np.abs(cands)
    allowed = np.maximum(1e-6, 64 * np.finfo(float).eps * mag / np.abs(cands))
    scale = np.abs(LIMIT_GAMMA * cands**3) + np.abs(LIMIT_ALPHA * cands**2) + np.abs((x - LIMIT_BETA) * cands) + 1
    res = np.abs(_cubic_residual(cands, x)) / scale
    good = cands[(res <= _CUBIC_TOL) & (moved <= allowed)]
    if good.size == 0:
        raise BranchError(f"no branch solves the limiting cubic at x={x}", list(zip(raw, res)))
    return complex(good[np.argmin(np.abs(good))])


def empirical_ratio(p: Params, n: int, x) -> complex:
    """P_n(x) / P_{n+1}(x) by the recurrence (no overflow)."""
    prev, cur, _, _ = evaluate_scaled(p, n + 1, np.array([complex(x)]))
    return complex(prev[0] / cur[0])


# --------------------------------------------------------------------------
# limiting zero distribution
# --------------------------------------------------------------------------


def zero_density(x, complement=None):
    """Limiting zero density on (0, 1).

    sqrt(3)/(4 pi) ((1 + s)^(1/3) + (1 - s)^(1/3)) / (x^(2/3) s),  s = sqrt(1 - x).
    ``complement`` may supply 1 - x without rounding.
    """
    x = np.asarray(x, dtype=float)
    xc = 1 - x if complement is None else np.asarray(complement, dtype=float)
    if np.any((x <= 0) | (xc <= 0)):
        raise ValueError("the zero density is defined on the open interval (0, 1)")
    s = np.sqrt(xc)
    small = x / (1 + s)  # 1 - s without cancellation
    val = np.sqrt(3) / (4 * np.pi) * ((1 + s) ** (1 / 3) + small ** (1 / 3)) / (x ** (2 / 3) * s)
    return float(val) if val.ndim == 0 else val


def _v_of_x(x):
    """v = (1 - sqrt(1 - x))^(1/3), the variable in which the CDF integrand is smooth."""
    x = np.asarray(x, dtype=float)
    return np.cbrt(x / (1 + np.sqrt(1 - x)))


def _h(v):
    # density in v: x = 1 - (1 - v^3)^2 removes both endpoint singularities
    w = 2 - v**3
    return 3 * np.sqrt(3) / (2 * np.pi) * (w ** (-1 / 3) + v * w ** (-2 / 3))


@dataclass(frozen=True)
class DensityTable:
    grid: np.ndarray  # x values, increasing, interior of (0, 1)
    density: np.ndarray
    cdf: np.ndarray
    total_mass: float  # CDF at x = 1 before any normalisation

    def __post_init__(self):
        object.__setattr__(self, "_interp", PchipInterpolator(self._v_grid(), self._v_cdf()))

    def _v_grid(self):
        return np.concatenate(([0.0], _v_of_x(self.grid), [1.0]))

    def _v_cdf(self):
        return np.concatenate(([0.0], self.cdf, [self.total_mass]))

    def __call__(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return self._interp(_v_of_x(x))


@lru_cache(maxsize=4)
def density_table(size: int = 4096) -> DensityTable:
    """Limit CDF on ``size`` points, integrated exactly (Gauss-Legendre) in the smooth variable v."""
    v = np.linspace(0.0, 1.0, size + 2)
    nodes, weights = leggauss(10)
    left, right = v[:-1], v[1:]
    half = 0.5 * (right - left)
    mid = 0.5 * (right + left)
    pieces = (weights[None, :] * _h(mid[:, None] + half[:, None] * nodes[None, :])).sum(axis=1) * half
    cum = np.concatenate(([0.0], np.cumsum(pieces)))
    inner = v[1:-1]
    x = 1 - (1 - inner**3) ** 2
    return DensityTable(grid=x, density=zero_density(x), cdf=cum[1:-1], total_mass=float(cum[-1]))


def limit_cdf(x):
    """CDF of the limiting zero distribution."""
    return density_table()(x)


def empirical_vs_limit(p: Params, n: int, *, zs: np.ndarray | None = None) -> float:
    """Kolmogorov distance between the zero counting measure of P_n and the limit."""
    if n < 10:
        raise ValueError("n must be >= 10")
    zs = np.sort(zs if zs is not None else zeros(p, n))
    F = limit_cdf(zs)
    k = np.arange(1, n + 1)
    return float(max(np.max(np.abs(k / n - F)), np.max(np.abs((k - 1) / n - F))))


# --------------------------------------------------------------------------
# behaviour at the hard edge x = 0
# --------------------------------------------------------------------------


def _log_mh_prefactor(p: Params, n: int) -> float:
    a, b, c, d = (float(v) for v in p.quadruple)
    C, D = c + n // 2, d + (n - 1) // 2
    lp = lambda z: gammaln(z + n) - gammaln(z)  # noqa: E731  log (z)_n, z > 0
    return lp(C) + lp(D) - lp(a) - lp(b)


def mehler_heine_scaled(p: Params, n: int, z):
    """(-1)^n (c+floor(n/2))_n (d+floor((n-1)/2))_n / ((a)_n (b)_n) P_n(z / n^3).

    The prefactor is summed in log space and P_n comes from the renormalised
    recurrence, so no intermediate overflows.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    _, val, _, logs = evaluate_scaled(p, n, z / n**3)
    return (-1) ** n * val * np.exp(logs + _log_mh_prefactor(p, n))


def mehler_heine_check(p: Params, n: int, z_samples) -> float:
    """sup over samples of |scaled P_n - 0F2(-; a, b; -z/4)|."""
    if n < 4:
        raise ValueError("n must be >= 4")
    z = np.asarray(z_samples, dtype=float)
    limit = entire_0f2(float(p.a), float(p.b), -z / 4)
    return float(np.max(np.abs(mehler_heine_scaled(p, n, z) - limit)))


@dataclass(frozen=True)
class ScaledZeroTable:
    k: int
    n_list: tuple
    scaled: tuple  # n^3 x_k^(n)
    limit: float  # 4 f_k
    errors: tuple


def scaled_zero_limit(p: Params, k: int, n_list) -> ScaledZeroTable:
    """n^3 times the k-th smallest zero of P_n, against its limit 4 f_k."""
    n_list = tuple(n_list)
    if k < 1 or k > min(n_list):
        raise ValueError("need 1 <= k <= min(n_list)")
    f = smallest_zeros_0f2(float(p.a), float(p.b), k)[k - 1]
    scaled = tuple(n**3 * float(zeros(p, n)[k - 1]) for n in n_list)
    limit = 4 * float(f)
    return ScaledZeroTable(k, n_list, scaled, limit, tuple(abs(s - limit) for s in scaled))
