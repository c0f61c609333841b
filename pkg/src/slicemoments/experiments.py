"""Monte Carlo drivers: Cauchy parameter estimation and sampling-distribution
studies of the shape-ratio estimators, fully seeded and replicate-parallel safe."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .comparators import classical_moments, sample_l_moments
from .distributions import DistributionSpec, RngStream, make_distribution, sample
from .errors import InvalidParameterError
from .mad import sample_mad_moments, sample_median
from .medad import sample_medad_moments

ESTIMATORS = ("mle", "medad", "quantile")

_MLE_GRAD_TOL = 1e-8
_MLE_MAX_ITER = 500


@dataclass
class CauchyEstimate:
    method: str
    theta_hat: float
    s_hat: float
    converged: bool = True


def _interpolated_quantile(sorted_x: np.ndarray, p: float) -> float:
    """Linear interpolation between order statistics at position p(n-1)+1."""
    n = sorted_x.size
    pos = p * (n - 1)
    lo = int(math.floor(pos))
    hi = min(lo + 1, n - 1)
    frac = pos - lo
    return float((1 - frac) * sorted_x[lo] + frac * sorted_x[hi])


def _cauchy_loglik_parts(x: np.ndarray, theta: float, s: float):
    u = (x - theta) / s
    w = 1.0 / (1.0 + u * u)
    n = x.size
    ll = -n * math.log(math.pi * s) - float(np.sum(np.log1p(u * u)))
    g_theta = 2.0 / s * float(np.sum(u * w))
    g_c = -n + 2.0 * float(np.sum(u * u * w))  # c = log s
    h_tt = -2.0 / s**2 * float(np.sum((1.0 - u * u) * w * w))
    h_tc = -4.0 / s * float(np.sum(u * w * w))
    h_cc = -4.0 * float(np.sum(u * u * w * w))
    return ll, np.array([g_theta, g_c]), np.array([[h_tt, h_tc], [h_tc, h_cc]])


def _cauchy_mle(x: np.ndarray, theta0: float, s0: float) -> CauchyEstimate:
    """Damped Newton ascent of the Cauchy log-likelihood in (theta, log s)."""
    theta, c = theta0, math.log(max(s0, 1e-12))
    ll, grad, hess = _cauchy_loglik_parts(x, theta, math.exp(c))
    converged = False
    for _ in range(_MLE_MAX_ITER):
        s = math.exp(c)
        # gradient norm in (theta, s) coordinates
        if math.hypot(grad[0], grad[1] / s) < _MLE_GRAD_TOL:
            converged = True
            break
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            step = grad / max(1.0, float(np.abs(grad).max()))
        if not np.all(np.isfinite(step)) or step @ grad < 0:
            step = grad / max(1.0, float(np.abs(grad).max()))
        scale = 1.0
        for _ in range(60):
            new_theta, new_c = theta + scale * step[0], c + scale * step[1]
            new_ll, new_grad, new_hess = _cauchy_loglik_parts(x, new_theta, math.exp(new_c))
            if np.isfinite(new_ll) and new_ll >= ll - 1e-13 * abs(ll):
                break
            scale *= 0.5
        theta, c, ll, grad, hess = new_theta, new_c, new_ll, new_grad, new_hess
    else:
        s = math.exp(c)
        converged = math.hypot(grad[0], grad[1] / s) < _MLE_GRAD_TOL
    return CauchyEstimate(method="mle", theta_hat=theta, s_hat=math.exp(c), converged=converged)


def estimate_cauchy(data, method: str) -> CauchyEstimate:
    """Cauchy (theta, s) estimation by MedAD, half-IQR quantile rule, or MLE."""
    x = np.asarray(data, dtype=float)
    if x.size < 5:
        raise InvalidParameterError("need n >= 5")
    if method not in ESTIMATORS:
        raise InvalidParameterError(f"unknown method {method!r}; choose from {ESTIMATORS}")
    m = sample_median(x)
    s_medad = float(np.median(np.abs(x - m)))
    if method == "medad":
        return CauchyEstimate(method="medad", theta_hat=m, s_hat=s_medad)
    if method == "quantile":
        xs = np.sort(x)
        q25 = _interpolated_quantile(xs, 0.25)
        q75 = _interpolated_quantile(xs, 0.75)
        return CauchyEstimate(method="quantile", theta_hat=m, s_hat=(q75 - q25) / 2.0)
    return _cauchy_mle(x, m, s_medad if s_medad > 0 else 1.0)


@dataclass
class SimulationConfig:
    spec: DistributionSpec
    sample_sizes: tuple
    replicates: int
    master_seed: int
    estimators: tuple = ESTIMATORS

    def __post_init__(self):
        if self.replicates < 1:
            raise InvalidParameterError("replicate count must be >= 1")
        if any(n < 5 for n in self.sample_sizes):
            raise InvalidParameterError("sample sizes must be >= 5")
        bad = [e for e in self.estimators if e not in ESTIMATORS]
        if bad:
            raise InvalidParameterError(f"unknown estimators: {bad}")


@dataclass
class SimulationReport:
    rows: list  # dicts: estimator, parameter, n, bias, mse, B, seed
    skipped: dict  # (estimator, n) -> count of degenerate replicates

    def row(self, estimator: str, parameter: str, n: int) -> dict:
        for r in self.rows:
            if r["estimator"] == estimator and r["parameter"] == parameter and r["n"] == n:
                return r
        raise KeyError((estimator, parameter, n))


def run_mc_study(config: SimulationConfig) -> SimulationReport:
    """Seeded bias/MSE study of Cauchy estimators.

    Replicate r uses stream_id = r; all estimators see the same sample.
    Accumulation is ordered by replicate id, so the report is independent
    of any internal parallelism.
    """
    if config.spec.family != "cauchy":
        raise InvalidParameterError("the Monte Carlo study targets the cauchy family")
    theta, s = config.spec.params
    model = make_distribution(config.spec)
    B = config.replicates
    rows = []
    skipped = {}
    for n in config.sample_sizes:
        errs = {est: {"theta": [], "s": []} for est in config.estimators}
        for r in range(B):
            x = sample(model, n, RngStream(config.master_seed, r))
            for est in config.estimators:
                fit = estimate_cauchy(x, est)
                if fit.s_hat <= 0:
                    skipped[(est, n)] = skipped.get((est, n), 0) + 1
                    continue
                errs[est]["theta"].append(fit.theta_hat - theta)
                errs[est]["s"].append(fit.s_hat - s)
        for est in config.estimators:
            for param in ("theta", "s"):
                e = np.asarray(errs[est][param])
                rows.append(
                    {
                        "estimator": est,
                        "parameter": param,
                        "n": n,
                        "bias": float(e.mean()),
                        "mse": float(np.mean(e**2)),
                        "B": B,
                        "seed": config.master_seed,
                    }
                )
    return SimulationReport(rows=rows, skipped=skipped)


RATIO_COLUMNS = ("gamma3", "gamma4", "psi3", "psi4", "tau3", "tau4", "g1", "g2")


@dataclass
class RatioSampleTable:
    spec: DistributionSpec
    n: int
    rows: np.ndarray  # (B, 9): replicate id then the eight ratios

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, 1 + RATIO_COLUMNS.index(name)]


def sampling_distribution_study(
    spec: DistributionSpec, n: int, B: int, seed: int
) -> RatioSampleTable:
    """Per-replicate shape-ratio table for one (distribution, n) setting."""
    if n < 8:
        raise InvalidParameterError("need n >= 8 so all eight statistics are computable")
    model = make_distribution(spec)
    rows = np.empty((B, 9))
    for r in range(B):
        x = sample(model, n, RngStream(seed, r))
        mad = sample_mad_moments(x, 4)
        medad = sample_medad_moments(x, 4)
        lmom = sample_l_moments(x)
        cls = classical_moments(x)
        rows[r] = (
            r,
            mad.ratio(3),
            mad.ratio(4),
            medad.ratio(3),
            medad.ratio(4),
            lmom.tau3,
            lmom.tau4,
            cls.g1,
            cls.g2,
        )
    return RatioSampleTable(spec=spec, n=n, rows=rows)
