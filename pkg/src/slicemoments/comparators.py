"""Comparison estimators: sample L-moments and classical moment shape measures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidParameterError


@dataclass
class LMomentSet:
    """First four sample L-moments and the L-skewness / L-kurtosis ratios."""

    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    tau3: Optional[float]
    tau4: Optional[float]


@dataclass
class ClassicalMomentSet:
    """Mean, sd and the g1/g2 shape measures, all with divisor n."""

    mean: float
    sd: float
    g1: Optional[float]
    g2: Optional[float]


def sample_l_moments(data) -> LMomentSet:
    """Unbiased sample L-moments via probability-weighted moments.

    b_r = (1/n) * sum_i x_(i) * prod_{j=1..r} (i - j) / (n - j), then the
    standard linear map to lambda_1..lambda_4.
    """
    x = np.sort(np.asarray(data, dtype=float))
    n = x.size
    if n < 4:
        raise InvalidParameterError("need n >= 4 for four L-moments")
    i = np.arange(1, n + 1, dtype=float)
    b0 = x.mean()
    b1 = float(np.sum(x * (i - 1)) / (n * (n - 1)))
    b2 = float(np.sum(x * (i - 1) * (i - 2)) / (n * (n - 1) * (n - 2)))
    b3 = float(np.sum(x * (i - 1) * (i - 2) * (i - 3)) / (n * (n - 1) * (n - 2) * (n - 3)))
    l1 = b0
    l2 = 2 * b1 - b0
    l3 = 6 * b2 - 6 * b1 + b0
    l4 = 20 * b3 - 30 * b2 + 12 * b1 - b0
    if l2 > 0:
        tau3, tau4 = l3 / l2, l4 / l2
    else:
        tau3 = tau4 = None
    return LMomentSet(lambda1=l1, lambda2=l2, lambda3=l3, lambda4=l4, tau3=tau3, tau4=tau4)


def classical_moments(data) -> ClassicalMomentSet:
    """Divisor-n central moments: mean, sd, skewness g1, excess kurtosis g2."""
    x = np.asarray(data, dtype=float)
    n = x.size
    if n < 2:
        raise InvalidParameterError("need n >= 2")
    mean = float(x.mean())
    d = x - mean
    m2 = float(np.mean(d**2))
    sd = float(np.sqrt(m2))
    if sd > 0:
        g1 = float(np.mean(d**3)) / m2**1.5
        g2 = float(np.mean(d**4)) / m2**2 - 3.0
    else:
        g1 = g2 = None
    return ClassicalMomentSet(mean=mean, sd=sd, g1=g1, g2=g2)
