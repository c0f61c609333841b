import math

import numpy as np
import pytest

from slicemoments import (
    InvalidParameterError,
    folded_cdf,
    make_distribution,
    population_medad_moments,
    sample_medad_moments,
    slice_median_solve,
)
from slicemoments.distributions import DistributionSpec

SYMMETRIC = [
    DistributionSpec("normal", (0.0, 1.0)),
    DistributionSpec("laplace", (1.0, 2.0)),
    DistributionSpec("cauchy", (0.0, 1.0)),
    DistributionSpec("uniform", (-1.0, 3.0)),
    DistributionSpec("logistic", (0.5, 1.5)),
    DistributionSpec("student_t", (3.0,)),
]


def _model(family, *params):
    return make_distribution(DistributionSpec(family, tuple(float(p) for p in params)))


class TestFoldedCdf:
    def test_examples(self):
        norm = _model("normal", 0, 1)
        assert folded_cdf(norm, 0.0) == 0.0
        assert folded_cdf(norm, 0.674490) == pytest.approx(0.5, abs=1e-5)
        cau = _model("cauchy", 0, 1)
        assert folded_cdf(cau, 1.0) == pytest.approx(0.5, abs=1e-12)

    def test_negative_y(self):
        with pytest.raises(InvalidParameterError):
            folded_cdf(_model("normal", 0, 1), -0.1)

    @pytest.mark.parametrize("spec", SYMMETRIC, ids=lambda s: s.family)
    def test_symmetry_reduction(self, spec):
        model = make_distribution(spec)
        med = model.median
        ys = np.linspace(0.0, 5.0, 40)
        reduced = 2 * np.asarray(model.cdf(med + ys)) - 1
        full = np.array([folded_cdf(model, float(y)) for y in ys])
        assert np.max(np.abs(full - np.clip(reduced, 0, 1))) <= 1e-12


class TestPopulationMedadMoments:
    def test_uniform_anchors(self):
        ms = population_medad_moments(_model("uniform", 0, 1), 4)
        assert ms.value(2) == pytest.approx(0.25, abs=1e-10)
        assert ms.value(3) == pytest.approx(0.0, abs=1e-10)
        # conditional-CDF procedure: y0 = y2 = 1/3, y1 = 1/12
        assert ms.value(4) == pytest.approx(-7.0 / 12.0, abs=1e-10)
        assert ms.ratio(4) == pytest.approx(-7.0 / 3.0, abs=1e-9)
        # the psi ratios are NOT bounded by 1, unlike the gamma ratios
        assert abs(ms.ratio(4)) > 1

    @pytest.mark.parametrize("theta,s", [(0.0, 1.0), (3.0, 2.0), (-5.0, 0.25)])
    def test_cauchy_anchors(self, theta, s):
        ms = population_medad_moments(_model("cauchy", theta, s), 2)
        assert ms.value(1) == pytest.approx(theta, abs=1e-10)
        assert ms.value(2) == pytest.approx(s, abs=1e-10)

    def test_normal_scale(self):
        ms = population_medad_moments(_model("normal", 0, 1), 2)
        assert ms.value(2) == pytest.approx(0.674490, abs=1e-6)

    @pytest.mark.parametrize(
        "family,params",
        [("cauchy", (0, 1)), ("pareto", (0.5, 1)), ("student_t", (1,))],
    )
    def test_universal_existence(self, family, params):
        ms = population_medad_moments(_model(family, *params), 5)
        assert all(math.isfinite(v) for v in ms.values)

    def test_closed_form_matches_bisection(self):
        tol = 1e-12
        for spec in SYMMETRIC + [DistributionSpec("exponential", (2.0,))]:
            model = make_distribution(spec)
            for b in (2, 3, 4):
                for a in range(b):
                    closed = slice_median_solve(model, b, a, tol=tol)
                    if closed.method != "closed_form":
                        continue
                    forced = slice_median_solve(model, b, a, tol=tol, force_bisection=True)
                    assert abs(closed.y - forced.y) <= 10 * tol + 1e-12 * abs(closed.y)


class TestSampleMedadMoments:
    def test_hand_oracle(self):
        ms = sample_medad_moments([1, 2, 3, 4, 5], 4)
        assert ms.value(2) == pytest.approx(1.0, abs=1e-15)
        # ceil partition puts the median point in the lower slice
        assert ms.value(3) == pytest.approx(0.5, abs=1e-15)

    def test_scale_equivariance(self):
        rng = np.random.default_rng(5)
        x = rng.standard_cauchy(150)
        base = sample_medad_moments(x, 5)
        scaled = sample_medad_moments(4.0 * x, 5)
        for order in range(1, 6):
            assert scaled.value(order) == pytest.approx(4.0 * base.value(order), rel=1e-12)
        for order in (3, 4, 5):
            assert scaled.ratio(order) == pytest.approx(base.ratio(order), rel=1e-12)

    def test_degenerate(self):
        ms = sample_medad_moments([2.0, 2.0, 2.0, 2.0], 3)
        assert ms.degenerate
