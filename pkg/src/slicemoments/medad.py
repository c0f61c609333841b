"""MedAD moments: slice-wise medians of absolute deviation from the median.

Replacing each slice expectation with a conditional slice median makes the
system exist for every distribution, heavy tails included.  Population
slice medians come from the folded CDF of |X - M| restricted to a slice;
sample slice medians are plain medians of deviations within rank blocks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import DistributionModel
from .errors import InvalidParameterError, SolverError
from .mad import MomentSet, slice_partition

_MAX_ITER = 200


def folded_cdf(model: DistributionModel, y) -> float:
    """CDF of Y = |X - M|: F(M + y) - F(M - y), clamped to [0, 1]."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr < 0):
        raise InvalidParameterError("folded CDF requires y >= 0")
    med = model.median
    val = np.clip(model.cdf(med + y_arr) - model.cdf(med - y_arr), 0.0, 1.0)
    return float(val) if np.isscalar(y) or y_arr.ndim == 0 else val


def _bisect_increasing(fn, target: float, hi0: float, tol: float) -> float:
    """Solve fn(y) = target for nondecreasing fn on y >= 0, expanding the bracket."""
    hi = max(hi0, tol)
    it = 0
    while fn(hi) < target:
        hi *= 2.0
        it += 1
        if it > _MAX_ITER:
            raise SolverError(f"no upper bracket found below y = {hi:g}")
    lo = 0.0
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if fn(mid) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    else:
        raise SolverError(f"bisection did not reach tol {tol:g} in bracket [{lo:g}, {hi:g}]")
    return 0.5 * (lo + hi)


@dataclass
class SliceMedianSolve:
    """Slice median y_a of |X - M| conditioned on the quantile slice (u, v]."""

    a: int
    u: float
    v: float
    y: float
    method: str  # "closed_form" or "bisection"


def _slice_conditional_cdf(model: DistributionModel, u: float, v: float, b: int):
    """Conditional CDF of |X - M| within the slice (u, v], scaled to reach 1."""
    med = model.median
    q_hi = float(model.quantile_fn(v)) if v < 1.0 else np.inf
    q_lo = float(model.quantile_fn(u)) if u > 0.0 else -np.inf

    def cond_cdf(y: float) -> float:
        upper = min(med + y, q_hi)
        lower = max(med - y, q_lo)
        if upper <= lower:
            return 0.0
        return b * (float(model.cdf(upper)) - float(model.cdf(lower)))

    return cond_cdf, q_lo, q_hi


def slice_median_solve(
    model: DistributionModel, b: int, a: int, tol: float = 1e-12, force_bisection: bool = False
) -> SliceMedianSolve:
    """Median of |X - M| within slice a of b.

    One-sided slices (entirely above or below the median) admit the closed
    form Q(u + 1/(2b)) - M (mirrored below); straddling slices are solved
    by monotone bisection on the conditional folded CDF.
    """
    u, v = a / b, (a + 1) / b
    med = model.median
    if not force_bisection and u >= 0.5:
        y = float(model.quantile_fn(u + 0.5 / b)) - med
        return SliceMedianSolve(a=a, u=u, v=v, y=y, method="closed_form")
    if not force_bisection and v <= 0.5:
        y = med - float(model.quantile_fn(v - 0.5 / b))
        return SliceMedianSolve(a=a, u=u, v=v, y=y, method="closed_form")
    cond_cdf, q_lo, q_hi = _slice_conditional_cdf(model, u, v, b)
    finite_dists = [d for d in (q_hi - med, med - q_lo) if np.isfinite(d) and d > 0]
    hi0 = max(finite_dists) if finite_dists else 1.0
    y = _bisect_increasing(cond_cdf, 0.5, hi0, tol)
    return SliceMedianSolve(a=a, u=u, v=v, y=y, method="bisection")


def population_medad_moments(
    model: DistributionModel, max_order: int, tol: float = 1e-12
) -> MomentSet:
    """Population MedAD moments up to max_order; defined for every family."""
    if max_order < 2:
        raise InvalidParameterError("max_order must be >= 2")
    med = model.median
    scale = _bisect_increasing(lambda y: folded_cdf(model, y), 0.5, 1.0, tol)
    values = [med, scale]
    for b in range(2, max_order):
        total = 0.0
        for a in range(b):
            total += ((-1.0) ** (a + 1)) * slice_median_solve(model, b, a, tol=tol).y
        values.append(total)
    ratios = [values[k] / scale for k in range(2, max_order)] if scale > 0 else None
    return MomentSet(
        system="MedAD_population", values=values, ratios=ratios, max_order=max_order
    )


def sample_medad_moments(data, max_order: int) -> MomentSet:
    """Sample MedAD moments with conditional medians inside rank slices."""
    arr = np.asarray(data, dtype=float)
    n = arr.size
    if n == 0:
        raise InvalidParameterError("empty data")
    if max_order < 2:
        raise InvalidParameterError("max_order must be >= 2")
    if n < max_order:
        raise InvalidParameterError("need n >= max_order")
    m = float(np.median(arr))
    sorted_dev = np.abs(np.sort(arr) - m)
    values = [m, float(np.median(sorted_dev))]
    for b in range(2, max_order):
        part = slice_partition(n, b)
        total = 0.0
        for a in range(b):
            lo, hi = part.slice_bounds(a)
            total += ((-1.0) ** (a + 1)) * float(np.median(sorted_dev[lo:hi]))
        values.append(total)
    scale = values[1]
    ratios = [values[k] / scale for k in range(2, max_order)] if scale > 0 else None
    return MomentSet(system="MedAD_sample", values=values, ratios=ratios, max_order=max_order)
