"""Tests for streaming moments, Poisson tails and histograms."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from casino_wager_lab.errors import DomainError
from casino_wager_lab.stats import (
    Histogram,
    StreamingMoments,
    moments_merge,
    moments_update,
    poisson_ccdf,
    poisson_log_ccdf,
    poisson_log_pmf,
    poisson_pmf,
    stderr_of_proportion,
)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


def _moments(values):
    m = StreamingMoments()
    for x in values:
        m = moments_update(m, x)
    return m


class TestMoments:
    def test_small_sample(self):
        m = _moments([1, 2, 3])
        assert m.mean == 2
        assert m.variance == 1

    def test_merge_law(self):
        merged = moments_merge(_moments([1, 2]), _moments([3]))
        assert merged.n == 3
        assert merged.mean == pytest.approx(2)
        assert merged.variance == pytest.approx(1)

    def test_large_offset(self):
        m = _moments([1e9 + 4, 1e9 + 7, 1e9 + 13, 1e9 + 16])
        assert m.variance == pytest.approx(30.0)

    def test_from_values_matches_numpy(self):
        values = np.random.default_rng(0).normal(5, 2, 1000)
        m = StreamingMoments.from_values(values)
        assert m.mean == pytest.approx(values.mean())
        assert m.variance == pytest.approx(values.var(ddof=1))

    def test_update_is_pure(self):
        m = _moments([1.0])
        moments_update(m, 3.0)
        assert m.n == 1

    @given(st.lists(finite, min_size=1, max_size=60), st.integers(0, 60))
    @settings(max_examples=50)
    def test_merge_matches_concatenation(self, values, cut):
        cut = min(cut, len(values))
        merged = _moments(values[:cut]).merge(_moments(values[cut:]))
        whole = StreamingMoments.from_values(values)
        assert merged.n == whole.n
        assert merged.mean == pytest.approx(whole.mean, rel=1e-9, abs=1e-6)
        assert merged.m2 == pytest.approx(whole.m2, rel=1e-9, abs=1e-3)

    @given(st.lists(finite, max_size=20), st.lists(finite, max_size=20), st.lists(finite, max_size=20))
    @settings(max_examples=50)
    def test_merge_is_associative(self, a, b, c):
        ma, mb, mc = _moments(a), _moments(b), _moments(c)
        left = ma.merge(mb).merge(mc)
        right = ma.merge(mb.merge(mc))
        assert left.n == right.n
        assert left.mean == pytest.approx(right.mean, rel=1e-9, abs=1e-6)
        assert left.m2 == pytest.approx(right.m2, rel=1e-9, abs=1e-3)

    def test_even_chance_standard_error(self):
        p = 18 / 37
        rng = np.random.default_rng(42)
        draws = np.where(rng.random(1_000_000) < p, 1.0, -1.0)
        m = StreamingMoments.from_values(draws)
        closed = 2 * math.sqrt(p * (1 - p)) / math.sqrt(len(draws))
        assert m.stderr == pytest.approx(closed, rel=0.01)


class TestProportion:
    def test_table_values(self):
        assert stderr_of_proportion(223507, 10**6) == pytest.approx(0.000417, abs=5e-7)
        assert stderr_of_proportion(337618, 10**6) == pytest.approx(0.000473, abs=5e-7)

    def test_zero_count(self):
        assert stderr_of_proportion(0, 100) == 0

    def test_empty_sample(self):
        with pytest.raises(DomainError):
            stderr_of_proportion(0, 0)


class TestPoisson:
    def test_pmf(self):
        assert poisson_pmf(1.484665, 0) == pytest.approx(0.226578, abs=5e-7)
        assert poisson_log_pmf(2.0, 3) == pytest.approx(sps.poisson.logpmf(3, 2.0))

    def test_ccdf(self):
        assert poisson_ccdf(1.51, 0) == 1.0
        assert poisson_ccdf(1.51, 1) == pytest.approx(0.779090, abs=5e-7)
        assert poisson_ccdf(1.51, 27) < 1.5e-24

    @pytest.mark.parametrize("n", [1, 3, 9, 27, 60])
    def test_log_ccdf_matches_scipy(self, n):
        assert poisson_log_ccdf(1.51, n) == pytest.approx(sps.poisson.logsf(n - 1, 1.51), rel=1e-9)

    def test_ccdf_nonincreasing(self):
        values = [poisson_ccdf(1.51, n) for n in range(40)]
        assert all(a >= b for a, b in zip(values, values[1:]))

    def test_pmf_sums_to_one(self):
        assert sum(poisson_pmf(1.484665, n) for n in range(100)) == pytest.approx(1.0, abs=1e-12)

    def test_large_mean(self):
        assert poisson_ccdf(300.0, 250) == pytest.approx(sps.poisson.sf(249, 300.0), rel=1e-9)

    @pytest.mark.parametrize("mu,n", [(0.0, 1), (-1.0, 1), (1.0, -1)])
    def test_domain(self, mu, n):
        with pytest.raises(DomainError):
            poisson_log_pmf(mu, n)


class TestHistogram:
    def test_counts_and_frame(self):
        h = Histogram(bin_width=1.0)
        h.add_many([-2.5, -2.1, 0.0, 0.9, 1.0])
        assert h.total == 5
        frame = h.to_frame()
        assert list(frame.columns) == ["bin_low", "bin_high", "count"]
        assert frame["bin_low"].tolist() == [-3.0, -2.0, -1.0, 0.0, 1.0]
        assert frame["count"].tolist() == [2, 0, 0, 2, 1]

    def test_merge(self):
        a, b = Histogram(), Histogram()
        a.add(0.5)
        b.add(0.7)
        assert a.merge(b).counts[0] == 2

    def test_merge_needs_same_bins(self):
        with pytest.raises(ValueError):
            Histogram(bin_width=1.0).merge(Histogram(bin_width=2.0))

    def test_empty_frame(self):
        assert Histogram().to_frame().empty
