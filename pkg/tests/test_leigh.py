"""Tests for the replicated Leigh experiment."""

from __future__ import annotations

import math
import os
from fractions import Fraction

import pytest
from pydantic import ValidationError

from casino_wager_lab.cache import CacheManager
from casino_wager_lab.errors import DomainError
from casino_wager_lab.experiments import reference
from casino_wager_lab.experiments.aggregate import STAT_FIELDS, AggregateStats, SessionStats
from casino_wager_lab.experiments.leigh import (
    SessionConfig,
    aggregate_sessions,
    consistency_ratio,
    n_distribution_frame,
    poisson_report,
    run_experiment,
    run_session,
    simulate_sessions,
    summarize,
)
from casino_wager_lab.games.roulette import EvenChance
from casino_wager_lab.rng import ScriptedStream, derive_stream
from casino_wager_lab.systems.labouchere import LabConfig

RED_ONLY = (EvenChance.RED,)
SMALL = SessionConfig(days=2, coups_per_day=60)


class TestSessionConfig:
    def test_defaults(self):
        config = SessionConfig()
        assert (config.days, config.coups_per_day) == (8, 360)
        assert len(config.chances) == 6

    @pytest.mark.parametrize("field", ["days", "coups_per_day"])
    def test_counts_positive(self, field):
        with pytest.raises(ValidationError):
            SessionConfig(**{field: 0})

    def test_chances_distinct(self):
        with pytest.raises(ValidationError):
            SessionConfig(chances=(EvenChance.RED, EvenChance.RED))


class TestRunSession:
    def test_two_losses_make_a_losing_progression(self):
        # 2 and 4 are black: red loses twice from a fresh list.
        stats = run_session(ScriptedStream([2, 4]), SessionConfig(days=1, coups_per_day=2, chances=RED_ONLY))
        assert (stats.n_losing, stats.sum_losing) == (1, 10)
        assert stats.n_incomplete == 0
        assert (stats.total_bet, stats.total_profit) == (10, -10)

    def test_extremal_pattern_wins_at_the_2680_call(self):
        pockets = [1, 1, 2] * 19 + [1]
        config = SessionConfig(days=1, coups_per_day=58, chances=RED_ONLY)
        stats = run_session(ScriptedStream(pockets), config)
        assert stats.n_winning == 1
        assert stats.sum_winning_sys == 7214
        assert (stats.n_incomplete, stats.sum_incomplete) == (1, 0)

    def test_extremal_pattern_with_a_higher_limit(self):
        pockets = [1, 1, 2] * 19 + [1]
        config = SessionConfig(days=1, coups_per_day=58, lab=LabConfig(max_bet=2700), chances=RED_ONLY)
        stats = run_session(ScriptedStream(pockets), config)
        assert stats.n_winning == 1
        assert stats.sum_winning_sys == stats.sum_winning == 6919
        assert stats.n_incomplete == 0

    def test_each_day_starts_fresh(self):
        stats = run_session(ScriptedStream([1, 1]), SessionConfig(days=2, coups_per_day=1, chances=RED_ONLY))
        assert (stats.n_incomplete, stats.sum_incomplete) == (2, 10)

    def test_imprisoned_coup_is_a_tie(self):
        stats = run_session(ScriptedStream([0, 3]), SessionConfig(days=1, coups_per_day=1, chances=RED_ONLY))
        assert (stats.n_incomplete, stats.sum_incomplete) == (1, 0)
        assert stats.total_bet == 5

    def test_accounting_closes(self):
        stats = run_session(derive_stream(1, 0), SMALL)
        assert stats.closed
        assert stats.total_bet > 0
        assert stats.coups_played == SMALL.days * SMALL.coups_per_day * 6
        assert stats.n_incomplete <= SMALL.days * 6


class TestExperiment:
    def test_rows_follow_replication_streams(self):
        frame = simulate_sessions(5, 7, SMALL, workers=1, chunk_size=3)
        assert frame["replication"].tolist() == list(range(7))
        expected = run_session(derive_stream(5, 4), SMALL).as_row()
        assert {k: int(frame.loc[4, k]) for k in STAT_FIELDS} == expected

    @pytest.mark.parametrize("workers", [4, 8])
    def test_worker_count_does_not_matter(self, workers):
        one = run_experiment(3, 24, SMALL, workers=1, chunk_size=3)
        many = run_experiment(3, 24, SMALL, workers=workers, chunk_size=3)
        assert one == many
        assert one.replications == 24
        assert sum(one.counts_of_n.values()) == 24
        assert one.histogram.total == 24

    def test_cached_rows_give_the_same_aggregate(self, tmp_path):
        cache = CacheManager(tmp_path)
        first = run_experiment(3, 6, SMALL, chunk_size=4, cache=cache)
        assert len(cache.list_cached()) == 1
        second = run_experiment(3, 6, SMALL, chunk_size=4, cache=cache)
        assert first == second

    def test_replications_positive(self):
        with pytest.raises(DomainError):
            simulate_sessions(1, 0, SMALL)

    def test_aggregate_merge_matches_single_block(self):
        frame = simulate_sessions(8, 10, SMALL)
        blocked = aggregate_sessions(frame, chunk_size=3)
        whole = AggregateStats.from_frame(frame)
        assert blocked.totals == whole.totals
        assert blocked.counts_of_n == whole.counts_of_n
        assert blocked.histogram == whole.histogram
        for name in STAT_FIELDS:
            assert blocked.moments[name].mean == pytest.approx(whole.moments[name].mean, rel=1e-12, abs=1e-9)

    def test_default_session_statistics(self):
        agg = run_experiment(2024, 200, SessionConfig(), chunk_size=50)
        assert abs(agg.mean("n_winning") - 1.484665) < 5 * agg.se("n_winning")
        assert abs(agg.mean("total_bet") - 413_287.742596) < 5 * agg.se("total_bet")
        assert abs(agg.p_profitable - 0.267993) < 5 * agg.p_profitable_se + 1e-9


class TestConsistencyRatio:
    def test_published_aggregates(self):
        totals = dict.fromkeys(STAT_FIELDS, 0)
        totals.update(
            sum_winning=12_227_812_000,
            sum_losing=20_502_704_884,
            sum_incomplete=2_691_843_352,
            total_bet=413_287_742_596,
        )
        agg = AggregateStats(replications=1, totals=totals)
        assert float(consistency_ratio(agg)) == pytest.approx(-0.0135089, abs=5e-8)

    def test_single_session(self):
        stats = run_session(derive_stream(9, 0), SMALL)
        agg = AggregateStats.from_sessions([stats])
        assert consistency_ratio(agg) == Fraction(stats.total_profit, stats.total_bet)

    def test_zero_bet(self):
        with pytest.raises(DomainError):
            consistency_ratio(AggregateStats.from_sessions([SessionStats()]))


class TestPoissonReport:
    def test_tables(self):
        agg = AggregateStats.from_sessions([SessionStats(n_winning=n) for n in (0, 0, 1, 2)])
        report = poisson_report(agg)
        assert report.mu0 == pytest.approx(0.75)
        assert report.table["n"].tolist() == [0, 1, 2]
        assert report.table["ccdf_hat"].tolist() == [1.0, 0.5, 0.25]
        assert report.table["poisson_mu1_ccdf"][1] == pytest.approx(0.779090, abs=5e-7)
        assert report.violations == []
        assert report.log10_tail27 < math.log10(1.5e-24)
        assert list(n_distribution_frame(report).columns) == [
            "n", "count", "p_hat", "se", "poisson_mu0", "poisson_mu1_ccdf",
        ]

    def test_violations_are_flagged(self):
        agg = AggregateStats.from_sessions([SessionStats(n_winning=5)] * 3)
        assert poisson_report(agg).violations == [1, 2, 3, 4, 5]

    def test_mu0_pmf(self):
        agg = AggregateStats.from_sessions([SessionStats(n_winning=n) for n in (1, 2)])
        report = poisson_report(agg, mu1=2.0)
        assert report.table["poisson_mu0"][0] == pytest.approx(math.exp(-1.5))
        assert report.mu1 == 2.0


def test_summary_fields():
    agg = run_experiment(1, 4, SMALL)
    summary = summarize(agg, poisson_report(agg), SMALL)
    assert summary.replications == 4
    assert summary.consistency_ratio == pytest.approx(float(consistency_ratio(agg)))
    assert summary.max_n_winning == agg.max_n_winning


def test_reference_data():
    ref = reference.load_reference()
    assert len(ref.progressions) == 27
    assert sum(ref.day_subtotals.values()) == ref.total_won == 799_258
    days = reference.day_totals(ref)
    assert days["subtotal"].tolist() == [78000, 130450, 66165, 67000, 55385, 123003, 159660, 119595]
    assert days.loc[days["day"] == 6, "unlisted"].item() == 0
    assert ref.simulation_estimates["n_winning"] == 1.484665
    assert [row.n for row in ref.n_distribution] == list(range(10))
    assert reference.observed_tail_probability(1.51) < 1.5e-24


def test_reference_comparison():
    frame = reference.comparison()
    assert len(frame) == 11
    assert frame.loc[0, "reported"] == 27


@pytest.mark.slow
def test_desk_scale_experiment():
    agg = run_experiment(1, 100_000, SessionConfig(), workers=os.cpu_count() or 1)
    assert abs(agg.mean("n_winning") - 1.484665) < 3 * agg.se("n_winning")
    assert abs(agg.mean("n_losing") - 2055.310293) < 3 * agg.se("n_losing")
    assert abs(agg.mean("total_bet") / 413_287.742596 - 1) < 0.005
    assert abs(agg.p_profitable - 0.267993) < 3 * agg.p_profitable_se
    assert abs(float(consistency_ratio(agg)) + 1 / 74) < 2e-4
    assert agg.max_n_winning <= 144
    report = poisson_report(agg)
    assert report.violations == []
    p0, se0 = report.table.loc[0, "p_hat"], report.table.loc[0, "se"]
    assert abs(p0 - 0.223507) < 3 * se0
