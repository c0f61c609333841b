"""Analytic distribution models and reproducible inverse-CDF sampling.

Eight continuous families are supported: uniform, normal, logistic,
Laplace, Cauchy, exponential, Pareto and Student-t (integer degrees of
freedom).  Every model exposes mutually consistent pdf/cdf/quantile
callables plus a flag saying whether the mean is finite, which gates the
expectation-based moment system downstream.

Sampling is inverse-CDF throughout so that a fixed uniform stream maps to
a fixed sample on every platform.  The normal quantile is evaluated with
scipy's ``ndtri`` (Cephes rational approximation, |error| well below
1e-9); Student-t draws are built from normals as Z / sqrt(S/nu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from .errors import InvalidParameterError

FAMILIES = (
    "uniform",
    "normal",
    "logistic",
    "laplace",
    "cauchy",
    "exponential",
    "pareto",
    "student_t",
)

_ALIASES = {"t": "student_t", "exp": "exponential", "expon": "exponential"}

_PARAM_COUNT = {
    "uniform": 2,
    "normal": 2,
    "logistic": 2,
    "laplace": 2,
    "cauchy": 2,
    "exponential": 1,
    "pareto": 2,
    "student_t": 1,
}


@dataclass(frozen=True)
class DistributionSpec:
    """Family name plus ordered parameters in the conventional parameterization."""

    family: str
    params: tuple

    @classmethod
    def parse(cls, text: str) -> "DistributionSpec":
        """Parse the CLI string form ``family:p1,p2`` (e.g. ``cauchy:0,1``, ``t:3``)."""
        family, _, rest = text.partition(":")
        family = _ALIASES.get(family.strip().lower(), family.strip().lower())
        if family not in FAMILIES:
            raise InvalidParameterError(f"unknown distribution family: {family!r}")
        if not rest:
            raise InvalidParameterError(f"missing parameters in spec {text!r}")
        try:
            params = tuple(float(tok) for tok in rest.split(","))
        except ValueError as exc:
            raise InvalidParameterError(f"non-numeric parameter in spec {text!r}") from exc
        return cls(family, params)


@dataclass(frozen=True)
class DistributionModel:
    """Immutable analytic model; safe for concurrent shared use."""

    spec: DistributionSpec
    pdf: Callable
    cdf: Callable
    quantile_fn: Callable
    median: float
    has_finite_mean: bool

    def quantile(self, p):
        """Quantile function; valid for p strictly inside (0, 1)."""
        p_arr = np.asarray(p, dtype=float)
        if np.any(p_arr <= 0.0) or np.any(p_arr >= 1.0):
            raise InvalidParameterError("quantile requires 0 < p < 1")
        return self.quantile_fn(p)


def _validate(spec: DistributionSpec) -> None:
    if spec.family not in FAMILIES:
        raise InvalidParameterError(f"unknown distribution family: {spec.family!r}")
    want = _PARAM_COUNT[spec.family]
    if len(spec.params) != want:
        raise InvalidParameterError(
            f"{spec.family} takes {want} parameter(s), got {len(spec.params)}"
        )
    f, p = spec.family, spec.params
    if f == "uniform" and not p[0] < p[1]:
        raise InvalidParameterError("uniform requires a < b")
    if f in ("normal", "logistic", "laplace", "cauchy") and not p[1] > 0:
        raise InvalidParameterError(f"{f} scale parameter must be > 0")
    if f == "exponential" and not p[0] > 0:
        raise InvalidParameterError("exponential rate must be > 0")
    if f == "pareto" and not (p[0] > 0 and p[1] > 0):
        raise InvalidParameterError("pareto requires alpha > 0 and x_m > 0")
    if f == "student_t":
        if not (p[0] > 0 and float(p[0]).is_integer()):
            raise InvalidParameterError("student_t requires integer nu >= 1")


def make_distribution(spec: DistributionSpec) -> DistributionModel:
    """Build a model with mutually consistent pdf/cdf/quantile."""
    _validate(spec)
    f, p = spec.family, spec.params

    if f == "uniform":
        a, b = p
        w = b - a
        pdf = lambda x: np.where((np.asarray(x) >= a) & (np.asarray(x) <= b), 1.0 / w, 0.0)
        cdf = lambda x: np.clip((np.asarray(x, dtype=float) - a) / w, 0.0, 1.0)
        qf = lambda q: a + w * np.asarray(q, dtype=float)
        finite = True
    elif f == "normal":
        mu, sigma = p
        pdf = lambda x: np.exp(-0.5 * ((np.asarray(x, dtype=float) - mu) / sigma) ** 2) / (
            sigma * math.sqrt(2.0 * math.pi)
        )
        cdf = lambda x: special.ndtr((np.asarray(x, dtype=float) - mu) / sigma)
        qf = lambda q: mu + sigma * special.ndtri(np.asarray(q, dtype=float))
        finite = True
    elif f == "logistic":
        mu, s = p
        pdf = lambda x: (
            lambda z: np.exp(-np.abs(z)) / (s * (1.0 + np.exp(-np.abs(z))) ** 2)
        )((np.asarray(x, dtype=float) - mu) / s)
        cdf = lambda x: special.expit((np.asarray(x, dtype=float) - mu) / s)
        qf = lambda q: mu + s * special.logit(np.asarray(q, dtype=float))
        finite = True
    elif f == "laplace":
        mu, b = p
        pdf = lambda x: np.exp(-np.abs(np.asarray(x, dtype=float) - mu) / b) / (2.0 * b)

        def cdf(x, mu=mu, b=b):
            z = (np.asarray(x, dtype=float) - mu) / b
            return np.where(z < 0, 0.5 * np.exp(z), 1.0 - 0.5 * np.exp(-z))

        def qf(q, mu=mu, b=b):
            q = np.asarray(q, dtype=float)
            return mu - b * np.sign(q - 0.5) * np.log1p(-2.0 * np.abs(q - 0.5))

        finite = True
    elif f == "cauchy":
        theta, s = p
        pdf = lambda x: 1.0 / (
            math.pi * s * (1.0 + ((np.asarray(x, dtype=float) - theta) / s) ** 2)
        )
        cdf = lambda x: 0.5 + np.arctan((np.asarray(x, dtype=float) - theta) / s) / math.pi
        qf = lambda q: theta + s * np.tan(math.pi * (np.asarray(q, dtype=float) - 0.5))
        finite = False
    elif f == "exponential":
        (lam,) = p
        pdf = lambda x: np.where(
            np.asarray(x, dtype=float) >= 0, lam * np.exp(-lam * np.asarray(x, dtype=float)), 0.0
        )
        cdf = lambda x: np.where(
            np.asarray(x, dtype=float) >= 0, -np.expm1(-lam * np.asarray(x, dtype=float)), 0.0
        )
        qf = lambda q: -np.log1p(-np.asarray(q, dtype=float)) / lam
        finite = True
    elif f == "pareto":
        alpha, xm = p
        pdf = lambda x: np.where(
            np.asarray(x, dtype=float) >= xm,
            alpha * xm**alpha / np.asarray(x, dtype=float) ** (alpha + 1.0),
            0.0,
        )
        cdf = lambda x: np.where(
            np.asarray(x, dtype=float) >= xm,
            1.0 - (xm / np.maximum(np.asarray(x, dtype=float), xm)) ** alpha,
            0.0,
        )
        qf = lambda q: xm * (1.0 - np.asarray(q, dtype=float)) ** (-1.0 / alpha)
        finite = alpha > 1.0
    else:  # student_t
        nu = int(p[0])
        lognorm = (
            special.gammaln((nu + 1) / 2.0)
            - special.gammaln(nu / 2.0)
            - 0.5 * math.log(nu * math.pi)
        )
        pdf = lambda x: np.exp(
            lognorm - 0.5 * (nu + 1) * np.log1p(np.asarray(x, dtype=float) ** 2 / nu)
        )
        cdf = lambda x: special.stdtr(nu, np.asarray(x, dtype=float))
        qf = lambda q: special.stdtrit(nu, np.asarray(q, dtype=float))
        finite = nu > 1

    median = float(qf(0.5))
    return DistributionModel(
        spec=spec, pdf=pdf, cdf=cdf, quantile_fn=qf, median=median, has_finite_mean=finite
    )


_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64(z: int) -> int:
    """One splitmix64 finalization round (Steele, Lea & Flood 2014)."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class RngStream:
    """A replicate-indexed stream of a fixed generator (numpy PCG64).

    The PCG64 seed is derived by mixing (master_seed, stream_id) through
    splitmix64, so identical identifiers give bit-identical draws on every
    platform and distinct stream ids give statistically independent streams.
    """

    master_seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        mixed = _splitmix64(_splitmix64(self.master_seed & _MASK64) ^ (self.stream_id & _MASK64))
        return np.random.Generator(np.random.PCG64(mixed))

    def uniforms(self, shape) -> np.ndarray:
        """Open-interval uniforms in (0, 1) built from 53-bit integers."""
        g = self.generator()
        return g.integers(1, 1 << 53, size=shape).astype(float) / float(1 << 53)


def sample(model: DistributionModel, n: int, rng: RngStream) -> np.ndarray:
    """Draw n i.i.d. values via the inverse-CDF transform.

    Student-t(nu) draws use Z / sqrt(S/nu) with S a sum of nu squared
    standard normals; everything else maps uniforms through the quantile.
    """
    if n < 1:
        raise InvalidParameterError("sample size must be >= 1")
    if model.spec.family == "student_t":
        nu = int(model.spec.params[0])
        u = rng.uniforms((n, nu + 1))
        z = special.ndtri(u)
        s = np.sum(z[:, 1:] ** 2, axis=1)
        return z[:, 0] / np.sqrt(s / nu)
    u = rng.uniforms(n)
    return np.asarray(model.quantile_fn(u), dtype=float)
