import itertools
import math

import numpy as np
import pytest

from slicemoments import (
    InvalidParameterError,
    classical_moments,
    sample_l_moments,
    sample_mad_moments,
)


def _lmoments_brute(data):
    """Direct U-statistic L-moments: average over all subsets of size r."""
    x = np.sort(np.asarray(data, dtype=float))
    n = x.size
    out = []
    for r in range(1, 5):
        total = 0.0
        count = 0
        for subset in itertools.combinations(range(n), r):
            vals = x[list(subset)]  # already ascending
            acc = 0.0
            for k in range(r):
                acc += (-1) ** k * math.comb(r - 1, k) * vals[r - 1 - k]
            total += acc / r
            count += 1
        out.append(total / count)
    return out


class TestLMoments:
    def test_hand_oracle(self):
        lm = sample_l_moments([1, 2, 3, 4, 5])
        assert lm.lambda1 == pytest.approx(3.0, abs=1e-14)
        assert lm.lambda2 == pytest.approx(1.0, abs=1e-14)
        assert lm.tau3 == pytest.approx(0.0, abs=1e-14)

    def test_matches_brute_force_u_statistic(self):
        rng = np.random.default_rng(11)
        for n in (4, 5, 6, 7, 8):
            x = rng.standard_normal(n)
            brute = _lmoments_brute(x)
            lm = sample_l_moments(x)
            got = [lm.lambda1, lm.lambda2, lm.lambda3, lm.lambda4]
            assert got == pytest.approx(brute, rel=1e-10, abs=1e-12)

    def test_constant_vector(self):
        lm = sample_l_moments([2.0, 2.0, 2.0, 2.0])
        assert lm.lambda2 == pytest.approx(0.0, abs=1e-14)
        assert lm.tau3 is None and lm.tau4 is None

    def test_ratio_invariance(self):
        rng = np.random.default_rng(12)
        x = rng.standard_cauchy(60)
        base = sample_l_moments(x)
        other = sample_l_moments(2.0 * x + 9.0)
        assert other.tau3 == pytest.approx(base.tau3, rel=1e-12)
        assert other.tau4 == pytest.approx(base.tau4, rel=1e-12)

    def test_small_n_error(self):
        with pytest.raises(InvalidParameterError):
            sample_l_moments([1.0, 2.0, 3.0])


class TestClassicalMoments:
    def test_examples(self):
        cm = classical_moments([1, 2, 3, 4, 5])
        assert cm.mean == 3.0
        assert cm.sd == pytest.approx(math.sqrt(2.0), rel=1e-14)
        assert cm.g1 == pytest.approx(0.0, abs=1e-14)
        assert classical_moments([0, 0, 0, 1]).g1 > 0

    def test_small_n_error(self):
        with pytest.raises(InvalidParameterError):
            classical_moments([1.0])


def test_skewness_sign_agreement_exponential():
    rng = np.random.default_rng(13)
    agree = 0
    trials = 1000
    for _ in range(trials):
        x = rng.exponential(size=200)
        g3 = sample_mad_moments(x, 4).ratio(3)
        t3 = sample_l_moments(x).tau3
        agree += np.sign(g3) == np.sign(t3)
    assert agree / trials > 0.95
