"""Six reverse-Labouchere bettors on the even chances of one wheel, replicated.

Each session is ``days`` days of ``coups_per_day`` en prison coups. Every
day each bettor starts from the initial list and whatever progression is
still open at the close counts as incomplete. Replication ``r`` draws from
``derive_stream(master_seed, r)``, and aggregation runs over fixed blocks of
replications merged in order, so results do not depend on the number of
worker processes or on whether session rows came from the cache.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator

from casino_wager_lab.errors import DomainError
from casino_wager_lab.experiments.aggregate import STAT_FIELDS, AggregateStats, SessionStats
from casino_wager_lab.experiments.models import LeighSummary
from casino_wager_lab.games.roulette import EVEN_CHANCES, EvenChance, even_chance_block
from casino_wager_lab.rng import RandomSource, derive_stream
from casino_wager_lab.stats import poisson_ccdf, poisson_log_ccdf, poisson_pmf, stderr_of_proportion
from casino_wager_lab.systems.labouchere import (
    LabConfig,
    ProgressionKind,
    ProgressionOutcome,
    ReverseLabouchere,
)

if TYPE_CHECKING:
    from casino_wager_lab.cache import CacheManager

logger = logging.getLogger(__name__)

EXPERIMENT_ID = "leigh-sessions"
DEFAULT_MU1 = 1.51
OBSERVED_WINNING_PROGRESSIONS = 27
# Fastest known winning progression from (1, 2, 3, 4) under a 2600 maximum:
# (WWL)^18 WW, ending when the next call of 2680 exceeds the limit.
# Three of the six chances can follow it together. The resulting ceiling is
# a warning threshold, not a proven bound.
FASTEST_WIN_COUPS = 56
CHANCES_IN_STEP = 3


class SessionConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    days: int = Field(default=8, ge=1)
    coups_per_day: int = Field(default=360, ge=1)
    lab: LabConfig = Field(default_factory=LabConfig)
    chances: tuple[EvenChance, ...] = Field(default=EVEN_CHANCES, min_length=1)

    @field_validator("chances")
    @classmethod
    def _distinct(cls, v: tuple[EvenChance, ...]) -> tuple[EvenChance, ...]:
        if len(set(v)) != len(v):
            raise ValueError("each even chance may be played by one bettor only")
        return v


def _record(stats: SessionStats, done: ProgressionOutcome) -> None:
    stats.coups_played += done.coups
    if done.kind is ProgressionKind.WINNING:
        stats.n_winning += 1
        stats.sum_winning += done.amount_act
        stats.sum_winning_sys += done.amount_sys
    elif done.kind is ProgressionKind.LOSING:
        stats.n_losing += 1
        stats.sum_losing -= done.amount_act
        stats.sum_losing_sys -= done.amount_sys
    else:
        stats.n_incomplete += 1
        stats.sum_incomplete += done.amount_act
        stats.sum_incomplete_sys += done.amount_sys


def run_session(stream: RandomSource, config: SessionConfig | None = None) -> SessionStats:
    """Play one session; every bettor sees the same coups."""
    config = config or SessionConfig()
    stats = SessionStats()
    bettors = [(chance.index, ReverseLabouchere(config.lab)) for chance in config.chances]
    for _day in range(config.days):
        block = even_chance_block(stream, config.coups_per_day)
        for index, bettor in bettors:
            for done in bettor.play_many(block[:, index].tolist()):
                _record(stats, done)
            done = bettor.finalize()
            if done is not None:
                _record(stats, done)
    stats.total_bet = sum(b.total_staked for _, b in bettors)
    stats.total_profit = sum(b.realized for _, b in bettors)
    return stats


def _run_block(master_seed: int, start: int, stop: int, config: SessionConfig) -> pd.DataFrame:
    rows = []
    for r in range(start, stop):
        row = run_session(derive_stream(master_seed, r), config).as_row()
        row["replication"] = r
        rows.append(row)
    return pd.DataFrame(rows, columns=["replication", *STAT_FIELDS])


def _blocks(replications: int, chunk_size: int) -> list[tuple[int, int]]:
    return [(s, min(s + chunk_size, replications)) for s in range(0, replications, chunk_size)]


def cache_params(master_seed: int, replications: int, config: SessionConfig) -> dict:
    return {"master_seed": master_seed, "replications": replications, "config": config.model_dump(mode="json")}


def simulate_sessions(
    master_seed: int,
    replications: int,
    config: SessionConfig | None = None,
    workers: int = 1,
    chunk_size: int = 1000,
    cache: CacheManager | None = None,
) -> pd.DataFrame:
    """One row of `SessionStats` per replication, ordered by replication index."""
    if replications < 1:
        raise DomainError(f"replications must be at least 1, got {replications}")
    if chunk_size < 1:
        raise DomainError(f"chunk_size must be at least 1, got {chunk_size}")
    config = config or SessionConfig()
    params = cache_params(master_seed, replications, config)
    if cache is not None:
        cached = cache.get_cached_df(EXPERIMENT_ID, params)
        if cached is not None:
            return cached

    blocks = _blocks(replications, chunk_size)
    logger.info(f"Simulating {replications} sessions in {len(blocks)} blocks on {workers} worker(s)")
    frames: list[pd.DataFrame] = []
    if workers <= 1 or len(blocks) == 1:
        for i, (start, stop) in enumerate(blocks, start=1):
            frames.append(_run_block(master_seed, start, stop, config))
            logger.info(f"Block {i}/{len(blocks)} done")
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_block, master_seed, start, stop, config) for start, stop in blocks]
            for i, future in enumerate(futures, start=1):
                frames.append(future.result())
                logger.info(f"Block {i}/{len(blocks)} done")
    frame = pd.concat(frames, ignore_index=True)

    if cache is not None:
        cache.cache_df(EXPERIMENT_ID, frame, params)
    return frame


def aggregate_sessions(frame: pd.DataFrame, chunk_size: int = 1000) -> AggregateStats:
    """Aggregate block by block in replication order."""
    frame = frame.sort_values("replication", ignore_index=True) if "replication" in frame else frame
    agg = AggregateStats()
    for start in range(0, len(frame), chunk_size):
        agg = agg.merge(AggregateStats.from_frame(frame.iloc[start : start + chunk_size]))
    return agg


def run_experiment(
    master_seed: int,
    replications: int,
    config: SessionConfig | None = None,
    workers: int = 1,
    chunk_size: int = 1000,
    cache: CacheManager | None = None,
) -> AggregateStats:
    config = config or SessionConfig()
    frame = simulate_sessions(master_seed, replications, config, workers, chunk_size, cache)
    agg = aggregate_sessions(frame, chunk_size)
    ceiling = CHANCES_IN_STEP * (config.coups_per_day // FASTEST_WIN_COUPS) * config.days
    if agg.max_n_winning > ceiling:
        logger.warning(f"A session had {agg.max_n_winning} winning progressions, above the ceiling of {ceiling}")
    return agg


def consistency_ratio(agg: AggregateStats) -> Fraction:
    """(winning - losing + incomplete) / total bet, exactly, from the f_act totals."""
    if agg.replications < 1:
        raise DomainError("consistency ratio needs at least one replication")
    bet = agg.totals["total_bet"]
    if bet == 0:
        raise DomainError("total amount bet is zero")
    net = agg.totals["sum_winning"] - agg.totals["sum_losing"] + agg.totals["sum_incomplete"]
    return Fraction(net, bet)


@dataclass
class PoissonReport:
    mu0: float
    mu1: float
    table: pd.DataFrame
    log10_tail27: float
    violations: list[int] = field(default_factory=list)
    thin_margins: list[int] = field(default_factory=list)  # bound holds by under two standard errors


def poisson_report(agg: AggregateStats, mu1: float = DEFAULT_MU1) -> PoissonReport:
    """Distribution of the number of winning progressions against two Poisson laws.

    ``mu0`` is the sample mean; ``mu1`` is the candidate stochastic upper bound,
    checked as P(N >= n) <= P(Poisson(mu1) >= n) at every observed n.
    """
    if agg.replications < 1:
        raise DomainError("Poisson report needs at least one replication")
    mu0 = agg.mean("n_winning")
    reps = agg.replications
    top = max(agg.counts_of_n) if agg.counts_of_n else 0
    rows = []
    at_least = reps
    for n in range(top + 1):
        count = agg.counts_of_n.get(n, 0)
        ccdf_hat = at_least / reps
        bound = poisson_ccdf(mu1, n)
        ccdf_se = stderr_of_proportion(at_least, reps)
        rows.append(
            {
                "n": n,
                "count": count,
                "p_hat": count / reps,
                "se": stderr_of_proportion(count, reps),
                "poisson_mu0": poisson_pmf(mu0, n) if mu0 > 0 else float(n == 0),
                "ccdf_hat": ccdf_hat,
                "ccdf_se": ccdf_se,
                "poisson_mu1_ccdf": bound,
                "bound_ok": ccdf_hat <= bound,
                "margin_se": (bound - ccdf_hat) / ccdf_se if ccdf_se > 0 else math.inf,
            }
        )
        at_least -= count
    table = pd.DataFrame(rows)
    violations = [int(n) for n in table.loc[~table["bound_ok"], "n"]]
    thin = [int(n) for n in table.loc[table["bound_ok"] & (table["margin_se"] < 2), "n"]]
    if violations:
        logger.warning(f"Empirical tail exceeds Poisson({mu1}) at n = {violations}")
    return PoissonReport(
        mu0=mu0,
        mu1=mu1,
        table=table,
        log10_tail27=poisson_log_ccdf(mu1, OBSERVED_WINNING_PROGRESSIONS) / math.log(10),
        violations=violations,
        thin_margins=thin,
    )


def n_distribution_frame(report: PoissonReport) -> pd.DataFrame:
    """The CSV layout of the N distribution."""
    return report.table[["n", "count", "p_hat", "se", "poisson_mu0", "poisson_mu1_ccdf"]]


def summarize(agg: AggregateStats, report: PoissonReport, config: SessionConfig) -> LeighSummary:
    ratio = consistency_ratio(agg)
    values: dict = {}
    for name in ("n_winning", "n_losing", "n_incomplete", "sum_winning", "sum_losing", "sum_incomplete", "total_bet", "total_profit"):
        values[f"{name}_mean"] = agg.mean(name)
        values[f"{name}_se"] = agg.se(name)
    for name in ("sum_winning_sys", "sum_losing_sys", "sum_incomplete_sys"):
        values[f"{name}_mean"] = agg.mean(name)
    return LeighSummary(
        replications=agg.replications,
        days=config.days,
        coups_per_day=config.coups_per_day,
        amount_per_winning=agg.amount_per("winning"),
        amount_per_losing=agg.amount_per("losing"),
        amount_per_incomplete=agg.amount_per("incomplete"),
        p_profitable=agg.p_profitable,
        p_profitable_se=agg.p_profitable_se,
        consistency_ratio=float(ratio),
        consistency_ratio_exact=f"{ratio.numerator}/{ratio.denominator}",
        mu0=report.mu0,
        mu1=report.mu1,
        log10_tail27=report.log10_tail27,
        max_n_winning=agg.max_n_winning,
        max_sum_winning=agg.max_sum_winning,
        bound_violations=report.violations,
        **values,
    )
