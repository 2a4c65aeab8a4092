"""Verification suites run by ``mophyp verify``.

Each suite takes a :class:`SuiteConfig` and returns a plain dict

    {"name", "status", "mode", "checks": [{"name", "status", "residual", "witness"}]}

so results serialise to JSON unchanged.  Suites are deterministic given the
seed; timings are added by the caller.
"""

from __future__ import annotations

import traceback
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import asymptotics, typei, typeii, weights
from .numcore import VerificationError, float_tolerance
from .weights import Params

SUITE_NAMES = (
    "orthogonality",
    "recurrence",
    "ode",
    "hahn",
    "pearson",
    "typei",
    "zeros",
    "confluence",
    "asymptotic",
    "degenerate",
)
_DEGENERATE_SUITES = ("orthogonality", "recurrence", "ode", "degenerate")


@dataclass(frozen=True)
class SuiteConfig:
    params: Params
    n_max: int = 12
    float_n_max: int = 80
    seed: int = 0


def _json_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    return str(v)


class _Collector:
    def __init__(self):
        self.checks = []

    def run(self, name, fn):
        """Call ``fn``; a returned number is recorded as the residual."""
        try:
            out = fn()
        except VerificationError as exc:
            self.checks.append({"name": name, "status": "fail", "residual": None, "witness": f"{exc}"})
            return None
        except Exception as exc:  # noqa: BLE001 - any failure is a failed check with its message
            self.checks.append(
                {"name": name, "status": "fail", "residual": None, "witness": f"{type(exc).__name__}: {exc}"}
            )
            return None
        residual = _json_value(out) if isinstance(out, (int, float, np.floating, Fraction)) and not isinstance(out, bool) else None
        self.checks.append({"name": name, "status": "pass", "residual": residual, "witness": None})
        return out

    def expect(self, name, ok: bool, witness=None, residual=None):
        self.checks.append(
            {
                "name": name,
                "status": "pass" if ok else "fail",
                "residual": None if residual is None else _json_value(residual),
                "witness": None if ok else str(witness),
            }
        )


def _mode(p: Params) -> str:
    return "exact" if p.exact else "float"


def _points(cfg: SuiteConfig, count: int, lo: float, hi: float) -> np.ndarray:
    rng = np.random.default_rng(cfg.seed)
    return np.sort(rng.uniform(lo, hi, count))


# --------------------------------------------------------------------------


def suite_orthogonality(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    for n in range(cfg.n_max + 1):
        col.run(f"typeII orthogonality n={n}", lambda n=n: typeii.orthogonality_check(p, n))


def suite_recurrence(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    n_route = max(cfg.n_max, 20) if p.exact else cfg.n_max
    rc = typeii.recurrence_coeffs(p, n_route)
    for n in range(n_route + 1):

        def same(n=n):
            a = typeii.typeii_coeffs(p, n).coeffs
            b = typeii.typeii_by_recurrence(p, n, rc).coeffs
            diff = a - b
            worst = max((abs(float(c)) for c in diff), default=0.0)
            if p.exact and not diff.is_zero():
                raise VerificationError(f"3F2 and recurrence routes differ at n={n}: {diff}", diff)
            if not p.exact and worst > float_tolerance(1e-10):
                raise VerificationError(f"3F2 and recurrence routes differ at n={n} by {worst}", worst)
            return worst

        col.run(f"route equivalence n={n}", same)
    col.run("lambda identities n<=30", lambda: typeii.lambda_identity_check(p, 30))
    if p.degenerate:
        # boundary weights: some lambda_k vanish, positivity is an interior property
        return
    lam = typeii.lambda_coeffs(p, 92)
    col.expect("lambda_0 = lambda_1 = 0, lambda_k > 0", lam[0] == 0 and lam[1] == 0 and all(v > 0 for v in lam[2:]), lam[:6])
    rc30 = typeii.recurrence_coeffs(p, 30)
    col.expect(
        "beta, alpha, gamma positive",
        all(v > 0 for v in rc30.beta) and all(v > 0 for v in rc30.alpha[1:]) and all(v > 0 for v in rc30.gamma[1:]),
    )
    constant = len(set(rc30.beta)) == 1 and len(set(rc30.alpha[1:])) == 1 and len(set(rc30.gamma[1:])) == 1
    col.expect(
        "constant coefficients" if constant else "coefficients vary with n",
        True,
        residual=None,
    )
    col.checks[-1]["witness"] = f"beta_0={rc30.beta[0]}, alpha_1={rc30.alpha[1]}, gamma_1={rc30.gamma[1]}"
    rc400 = typeii.recurrence_coeffs(p.to_float(), 400)
    err = abs(rc400.beta[400] - asymptotics.LIMIT_BETA)
    col.expect("|beta_400 - 4/9| < 5e-3", err < 5e-3, err, err)


def suite_ode(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    for n in range(min(cfg.n_max, 15) + 1):
        col.run(f"third-order ODE n={n}", lambda n=n: typeii.ode_check(p, n))


def suite_hahn(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    for n in range(min(cfg.n_max, 15) + 1):
        col.run(f"Hahn shift n={n}", lambda n=n: typeii.hahn_shift_check(p, n))
    xs = _points(cfg, 10, 0.02, 0.98)
    for n in range(1, min(cfg.n_max, 6) + 1):
        col.run(
            f"type I derivative relation n={n}",
            lambda n=n: max(typei.typei_derivative_relation_check(p, n, x) for x in xs),
        )


def suite_pearson(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    pf = p.to_float()
    xs = _points(cfg, 20, 0.01, 0.99)
    tol = float_tolerance(1e-9)

    def pearson():
        worst = max(max(np.max(s), np.max(o)) for s, o in (weights.pearson_checks(pf, x) for x in xs))
        if worst > tol:
            raise VerificationError(f"Pearson residual {worst:.3g}", worst)
        return worst

    def weight_ode():
        worst = float(np.max(weights.weight_ode_residual(pf, xs)))
        if worst > tol:
            raise VerificationError(f"weight ODE residual {worst:.3g}", worst)
        return worst

    def sfraction():
        ys = _points(cfg, 20, 0.1, 0.9)
        cf = weights.ratio_sfraction_converged(pf, ys).value
        direct = weights.weight_eval(pf, ys, 0) / weights.weight_eval(pf, ys, 1)
        worst = float(np.max(np.abs(cf / direct - 1)))
        if worst > float_tolerance(1e-10):
            raise VerificationError(f"S-fraction vs weight ratio {worst:.3g}", worst)
        return worst

    col.run("Pearson shift and first-order system", pearson)
    col.run("weight ODE", weight_ode)
    col.run("S-fraction equals w0/w1", sfraction)
    g = weights.sfraction_g(p, 200)
    col.expect("0 < g_n < 1", all(0 < v < 1 for v in g[1:]), g[1:4])


def suite_typei(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    for n in range(1, min(cfg.n_max, 8) + 1):
        pair = col.run(f"type I pair n={n}", lambda n=n: typei.typei_pair(p, n))
        if pair is None:
            continue
        col.run(f"type I vanishing n={n}", lambda n=n, pair=pair: typei.typei_orthogonality_check(p, n, pair)[0])
        norm, mag = typei.typei_pairing(pair, n - 1, with_magnitude=True)
        ok = norm == 1 if p.exact else abs(norm - 1) <= float_tolerance(1e-10) * mag
        col.expect(f"type I normalisation n={n}", ok, norm, norm)
        col.run(f"type I degrees n={n}", lambda pair=pair: typei.typei_degree_check(pair))
        count = len(typei.sign_changes(p, n, pair=pair))
        col.expect(f"type I sign changes n={n}", count == n - 1, f"{count} sign changes")
    xs = _points(cfg, 10, 0.05, 0.95)
    for n in range(0, min(cfg.n_max, 4) + 1):

        def rodrigues(n=n):
            r = typei.rodrigues_eval(p, n, xs)
            f = typei.typei_function_eval(p, n + 1, xs)
            worst = float(np.max(np.abs(r - f)) / np.max(np.abs(f)))
            if worst > float_tolerance(1e-8):
                raise VerificationError(f"Rodrigues vs rising operator {worst:.3g}", worst)
            return worst

        col.run(f"Rodrigues route n={n + 1}", rodrigues)


def suite_zeros(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    top = min(40, cfg.float_n_max)
    prev = None
    for n in range(1, top + 1):
        rep = col.run(f"zeros dual oracle n={n}", lambda n=n: typeii.zero_report(p, n))
        if rep is None:
            prev = None
            continue
        z = rep.zeros
        if prev is not None:
            inter = bool(np.all(z[:-1] < prev) and np.all(prev < z[1:]))
            col.expect(f"interlacing n={n - 1},{n}", inter)
        prev = z
    for n in range(1, min(cfg.n_max, 15) + 1):
        col.run(f"bidiagonal factorisation n={n}", lambda n=n: typeii.bidiagonal_check(p, n))


def suite_confluence(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    for eps in (0, 1):
        for n in range(min(cfg.n_max, 8) + 1):
            col.run(
                f"confluence eps={eps} n={n}",
                lambda n=n, eps=eps: typeii.confluence_check(p, n, eps).distances[-1],
            )


def _decreasing(vals) -> bool:
    return all(b < a for a, b in zip(vals, vals[1:]))


def suite_asymptotic(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    N = cfg.float_n_max
    ks_n = (N // 4, N // 2, N)
    ks = [asymptotics.empirical_vs_limit(p, n) for n in ks_n if n >= 10]
    col.expect(f"Kolmogorov distance decreasing along {ks_n}", _decreasing(ks), ks, ks[-1])
    zs = np.linspace(0, 40, 201)
    mh = [asymptotics.mehler_heine_check(p, n, zs) for n in (16, 32, 64)]
    col.expect("Mehler-Heine error decreasing along (16, 32, 64)", _decreasing(mh), mh, mh[-1])
    sz_n = (N // 2, N, 2 * N)
    tab = asymptotics.scaled_zero_limit(p, 1, sz_n)
    col.expect(f"scaled smallest zero error decreasing along {sz_n}", _decreasing(tab.errors), tab.errors, tab.errors[-1])
    pts = (-1.0, -0.25, 1.5, 2.0, 5.0, -3.0, 0.5 + 0.5j, 0.5 - 1j, 2 + 1j, -1 - 1j)
    worst_res, worst_ratio = 0.0, 0.0
    for x in pts:
        r = asymptotics.ratio_rho(x)
        worst_res = max(worst_res, abs(asymptotics._cubic_residual(r, x)))
        worst_ratio = max(worst_ratio, abs(asymptotics.empirical_ratio(p, 120, x) - r))
    col.expect("rho solves the limiting cubic", worst_res <= 1e-10, worst_res, worst_res)
    col.expect("P_120/P_121 within 2e-2 of rho", worst_ratio <= 2e-2, worst_ratio, worst_ratio)


def suite_degenerate(cfg: SuiteConfig, col: _Collector):
    p = cfg.params
    if not p.degenerate:
        col.expect("degenerate boundary", True, residual=None)
        col.checks[-1]["witness"] = "not a boundary quadruple; nothing to check"
        return
    xs = np.linspace(0.01, 0.99, 99)
    a, b, c, d = (float(v) for v in p.quadruple)
    closed = weights.weight_eval(p, xs, 0)
    general = weights.weight_by_quadruple(a, b, c, d, xs)
    err = float(np.max(np.abs(closed / (b * xs ** (b - 1)) - 1)))
    err2 = float(np.max(np.abs(general / closed - 1)))
    col.expect("w0 = b x^(b-1)", max(err, err2) <= 1e-12, (err, err2), max(err, err2))


_SUITES = {
    "orthogonality": suite_orthogonality,
    "recurrence": suite_recurrence,
    "ode": suite_ode,
    "hahn": suite_hahn,
    "pearson": suite_pearson,
    "typei": suite_typei,
    "zeros": suite_zeros,
    "confluence": suite_confluence,
    "asymptotic": suite_asymptotic,
    "degenerate": suite_degenerate,
}


def applicable_suites(p: Params, requested) -> list:
    if p.degenerate:
        return [s for s in requested if s in _DEGENERATE_SUITES]
    return list(requested)


def run_suite(name: str, cfg: SuiteConfig) -> dict:
    col = _Collector()
    try:
        _SUITES[name](cfg, col)
    except Exception as exc:  # noqa: BLE001 - a crashing suite is reported, not raised
        col.expect("suite completed", False, "".join(traceback.format_exception_only(type(exc), exc)).strip())
    status = "pass" if all(c["status"] == "pass" for c in col.checks) else "fail"
    return {"name": name, "status": status, "mode": _mode(cfg.params), "checks": col.checks}
