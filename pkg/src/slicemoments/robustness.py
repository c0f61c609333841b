"""Robustness diagnostics: breakdown points, contamination sweeps,
finite-sample sensitivity curves and the analytic median influence."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .comparators import classical_moments, sample_l_moments
from .distributions import DistributionModel
from .errors import InvalidParameterError
from .mad import sample_mad_moments, sample_median
from .medad import sample_medad_moments

DIVERGENCE_DIVISOR = 100.0


def breakdown_point(b: int) -> float:
    """Asymptotic breakdown fraction of the order-(b+1) MedAD moment."""
    if b < 0:
        raise InvalidParameterError("order index b must be >= 0")
    if b <= 1:
        return 0.5
    return 1.0 / (2.0 * b)


@dataclass
class BreakdownReport:
    b: int
    analytic_fraction: float
    magnitude: float
    results: list  # (k, statistic value, diverged flag)
    first_diverged: Optional[int]


def _medad_statistic(data, b: int) -> float:
    """phi_{b+1}: the MedAD scale for b = 1, the sliced sum for b >= 2."""
    ms = sample_medad_moments(data, max_order=max(b + 1, 2))
    return ms.value(b + 1)


def contamination_sweep(
    data, b: int, magnitude: float = 1e12, max_count: Optional[int] = None
) -> BreakdownReport:
    """Replace the k largest points by `magnitude` for k = 0..max_count and
    flag divergence of phi_{b+1} when its magnitude exceeds magnitude/100."""
    arr = np.sort(np.asarray(data, dtype=float))
    n = arr.size
    if b < 1:
        raise InvalidParameterError("order index b must be >= 1")
    if magnitude <= np.max(np.abs(arr)):
        raise InvalidParameterError("contamination magnitude must exceed max|data|")
    if max_count is None:
        max_count = n // 2
    if max_count > n / 2:
        raise InvalidParameterError("max_count must be <= n/2")
    results = []
    first = None
    threshold = magnitude / DIVERGENCE_DIVISOR
    for k in range(max_count + 1):
        contaminated = arr.copy()
        if k:
            contaminated[-k:] = magnitude
        stat = _medad_statistic(contaminated, b)
        diverged = abs(stat) > threshold
        if diverged and first is None:
            first = k
        results.append((k, stat, diverged))
    return BreakdownReport(
        b=b,
        analytic_fraction=breakdown_point(b),
        magnitude=magnitude,
        results=results,
        first_diverged=first,
    )


def _ratio(ms, order):
    return ms.ratio(order)


STATISTICS = {
    "median": sample_median,
    "delta2": lambda x: sample_mad_moments(x, 2).value(2),
    "gamma3": lambda x: sample_mad_moments(x, 4).ratio(3),
    "gamma4": lambda x: sample_mad_moments(x, 4).ratio(4),
    "phi2": lambda x: sample_medad_moments(x, 2).value(2),
    "psi3": lambda x: sample_medad_moments(x, 4).ratio(3),
    "psi4": lambda x: sample_medad_moments(x, 4).ratio(4),
    "tau3": lambda x: sample_l_moments(x).tau3,
    "tau4": lambda x: sample_l_moments(x).tau4,
    "g1": lambda x: classical_moments(x).g1,
    "g2": lambda x: classical_moments(x).g2,
}


@dataclass
class SensitivityCurve:
    """Add-one empirical influence: SC(z) = (n+1) * [T(x + {z}) - T(x)]."""

    statistic: str
    base_n: int
    z_grid: np.ndarray
    values: np.ndarray


def sensitivity_curve(data, statistic: str, z_grid) -> SensitivityCurve:
    """Recompute the statistic from scratch on each augmented sample."""
    if statistic not in STATISTICS:
        raise InvalidParameterError(
            f"unknown statistic {statistic!r}; choose from {sorted(STATISTICS)}"
        )
    arr = np.asarray(data, dtype=float)
    n = arr.size
    if n < 5:
        raise InvalidParameterError("need n >= 5")
    fn = STATISTICS[statistic]
    base = fn(arr)
    if base is None:
        raise InvalidParameterError("statistic undefined on base sample")
    z_grid = np.asarray(z_grid, dtype=float)
    values = np.empty_like(z_grid)
    for idx, z in enumerate(z_grid):
        augmented = np.append(arr, z)
        t = fn(augmented)
        if t is None:
            raise InvalidParameterError(f"statistic undefined on augmented sample at z={z}")
        values[idx] = (n + 1) * (t - base)
    return SensitivityCurve(statistic=statistic, base_n=n, z_grid=z_grid, values=values)


def median_influence(model: DistributionModel, z: float) -> float:
    """Analytic influence of the median: (1/2 - I[z <= M]) / f(M)."""
    fm = float(model.pdf(model.median))
    if fm <= 0:
        raise InvalidParameterError("zero density at the median")
    return (0.5 - float(z <= model.median)) / fm
