"""MAD moments: alternating sums of slice-wise mean absolute deviations.

The population side integrates |Q(p) - M| over equiprobable probability
slices; the sample side partitions the sorted data by rank.  Both carry
the same alternating-sign aggregation, and the higher-order values divided
by the second give bounded shape ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import quad

from .distributions import DistributionModel
from .errors import InvalidParameterError, MomentsUndefinedError


@dataclass
class MomentSet:
    """Ordered moments of one system plus the standardized ratios.

    ``values[k]`` is the order-(k+1) moment; ``ratios[k]`` is the
    order-(k+3) ratio (ratios start at order 3).  ``ratios`` is None when
    the scale moment is zero (degenerate sample).
    """

    system: str
    values: list
    ratios: Optional[list]
    max_order: int

    @property
    def degenerate(self) -> bool:
        return self.ratios is None

    def value(self, order: int) -> float:
        return self.values[order - 1]

    def ratio(self, order: int) -> float:
        if self.ratios is None:
            raise MomentsUndefinedError("ratios undefined: zero scale moment")
        return self.ratios[order - 3]


@dataclass(frozen=True)
class SlicePartition:
    """Rank assignment of n sorted observations to b equiprobable slices.

    Boundaries follow c_a = ceil(n*a/b); slice a holds sorted positions
    (c_a, c_{a+1}] in 1-based terms.
    """

    n: int
    b: int
    boundaries: tuple

    def slice_bounds(self, a: int):
        """Half-open 0-based index range [lo, hi) of slice a in the sorted data."""
        return self.boundaries[a], self.boundaries[a + 1]

    def sizes(self):
        return tuple(
            self.boundaries[a + 1] - self.boundaries[a] for a in range(self.b)
        )


def slice_partition(n: int, b: int) -> SlicePartition:
    """Deterministic ceil-rule partition covering every index exactly once."""
    if b < 1:
        raise InvalidParameterError("slice count must be >= 1")
    if n < b:
        raise InvalidParameterError("need at least one observation per slice (n >= b)")
    boundaries = tuple(-((-n * a) // b) for a in range(b + 1))
    return SlicePartition(n=n, b=b, boundaries=boundaries)


def sample_median(data) -> float:
    """Middle order statistic; average of the two middle ones for even n."""
    arr = np.asarray(data, dtype=float)
    if arr.size == 0:
        raise InvalidParameterError("median of empty data")
    return float(np.median(arr))


def _integrate_abs_dev(model: DistributionModel, lo: float, hi: float, tol: float) -> float:
    """Integral of |Q(p) - M| over (lo, hi), split at the kink p = 1/2."""
    med = model.median

    def integrand(p):
        return abs(float(model.quantile_fn(p)) - med)

    pieces = []
    if lo < 0.5 < hi:
        pieces = [(lo, 0.5), (0.5, hi)]
    else:
        pieces = [(lo, hi)]
    total = 0.0
    for a, b in pieces:
        val, _ = quad(integrand, a, b, epsabs=1e-15, epsrel=tol, limit=200)
        total += val
    return total


def population_mad_moments(
    model: DistributionModel, max_order: int, tol: float = 1e-10
) -> MomentSet:
    """Population MAD moments up to max_order by probability-space quadrature.

    Requires a finite mean; otherwise every moment beyond the median is
    infinite and a MomentsUndefinedError is raised.
    """
    if max_order < 2:
        raise InvalidParameterError("max_order must be >= 2")
    if not model.has_finite_mean:
        raise MomentsUndefinedError(
            f"MAD moments beyond order 1 are infinite for {model.spec.family}"
            f"{model.spec.params}: mean is not finite"
        )
    values = [model.median]
    scale = _integrate_abs_dev(model, 0.0, 1.0, tol)
    values.append(scale)
    for b in range(2, max_order):
        total = 0.0
        for a in range(b):
            term = _integrate_abs_dev(model, a / b, (a + 1) / b, tol)
            total += ((-1.0) ** (a + 1)) * term
        values.append(total)
    ratios = [values[k] / scale for k in range(2, max_order)] if scale > 0 else None
    return MomentSet(system="MAD_population", values=values, ratios=ratios, max_order=max_order)


def _slice_sums(sorted_dev: np.ndarray, part: SlicePartition) -> np.ndarray:
    """Per-slice sums of sorted absolute deviations, each divided by n."""
    n = sorted_dev.size
    out = np.empty(part.b)
    for a in range(part.b):
        lo, hi = part.slice_bounds(a)
        out[a] = sorted_dev[lo:hi].sum() / n
    return out


def sample_mad_moments(data, max_order: int) -> MomentSet:
    """Sample MAD moments; slice terms are normalized by the full n."""
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
    values = [m, float(np.mean(np.abs(arr - m)))]
    for b in range(2, max_order):
        part = slice_partition(n, b)
        sums = _slice_sums(sorted_dev, part)
        signs = (-1.0) ** (np.arange(b) + 1)
        values.append(float(signs @ sums))
    scale = values[1]
    ratios = [values[k] / scale for k in range(2, max_order)] if scale > 0 else None
    return MomentSet(system="MAD_sample", values=values, ratios=ratios, max_order=max_order)


@dataclass
class SliceCovariance:
    """Empirical slice-mean covariance and the alternating quadratic form K."""

    b: int
    means: np.ndarray
    cov: np.ndarray
    K: float


def mad_asymptotic_variance(data, b: int) -> SliceCovariance:
    """Plug-in variance K for sqrt(n) * (sample MAD moment - population value).

    With the sample median m and the rank partition fixed, h_a(x_i) equals
    |x_i - m| when i falls in slice a and 0 otherwise.  The covariance uses
    divisor n; for e != f the products vanish, so those covariances are
    exactly -mean_e * mean_f.
    """
    arr = np.sort(np.asarray(data, dtype=float))
    n = arr.size
    if b < 1:
        raise InvalidParameterError("slice count must be >= 1")
    if n < 2 * b:
        raise InvalidParameterError("need n >= 2b")
    part = slice_partition(n, b)
    if min(part.sizes()) < 2:
        raise InvalidParameterError("every slice needs at least 2 points")
    m = float(np.median(arr))
    dev = np.abs(arr - m)
    h = np.zeros((b, n))
    for a in range(b):
        lo, hi = part.slice_bounds(a)
        h[a, lo:hi] = dev[lo:hi]
    means = h.mean(axis=1)
    cov = (h @ h.T) / n - np.outer(means, means)
    w = (-1.0) ** (np.arange(b) + 1)
    return SliceCovariance(b=b, means=means, cov=cov, K=float(w @ cov @ w))
