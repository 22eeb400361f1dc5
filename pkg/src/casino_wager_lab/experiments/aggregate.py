"""Mergeable aggregates over simulated Leigh sessions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields
from fractions import Fraction

import pandas as pd

from casino_wager_lab.core.models import INT64_MAX
from casino_wager_lab.errors import AccumulatorOverflowError, DomainError
from casino_wager_lab.stats import Histogram, StreamingMoments, stderr_of_proportion


@dataclass(slots=True)
class SessionStats:
    """Progression counts and amounts of one eight-day session (f_act basis unless named _sys)."""

    n_winning: int = 0
    n_losing: int = 0
    n_incomplete: int = 0
    sum_winning: int = 0
    sum_losing: int = 0  # magnitude: money lost
    sum_incomplete: int = 0  # signed
    sum_winning_sys: int = 0
    sum_losing_sys: int = 0
    sum_incomplete_sys: int = 0
    total_bet: int = 0
    total_profit: int = 0
    coups_played: int = 0  # summed over chances

    @property
    def closed(self) -> bool:
        """Every staked franc is accounted for by exactly one progression."""
        return self.total_profit == self.sum_winning - self.sum_losing + self.sum_incomplete

    def as_row(self) -> dict[str, int]:
        row = {f.name: getattr(self, f.name) for f in fields(self)}
        for name, value in row.items():
            if abs(value) > INT64_MAX:
                raise AccumulatorOverflowError(f"{name} = {value} does not fit in 64 bits")
        return row


STAT_FIELDS: tuple[str, ...] = tuple(f.name for f in fields(SessionStats))

# Percent bins of total profit over total bet.
RATIO_BIN_WIDTH = 1.0


@dataclass
class AggregateStats:
    replications: int = 0
    moments: dict[str, StreamingMoments] = field(
        default_factory=lambda: {name: StreamingMoments() for name in STAT_FIELDS}
    )
    totals: dict[str, int] = field(default_factory=lambda: dict.fromkeys(STAT_FIELDS, 0))
    histogram: Histogram = field(default_factory=lambda: Histogram(bin_width=RATIO_BIN_WIDTH))
    counts_of_n: Counter = field(default_factory=Counter)
    n_profitable: int = 0
    max_n_winning: int = 0
    max_sum_winning: int = 0

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> AggregateStats:
        """Aggregate a block of session rows (one row per replication)."""
        agg = cls(replications=len(frame))
        if frame.empty:
            return agg
        for name in STAT_FIELDS:
            column = frame[name]
            agg.moments[name] = StreamingMoments.from_values(column.to_numpy())
            agg.totals[name] = sum(int(v) for v in column.tolist())
        bet = frame["total_bet"].to_numpy(dtype=float)
        profit = frame["total_profit"].to_numpy(dtype=float)
        ratio = [100.0 * p / b if b > 0 else 0.0 for p, b in zip(profit, bet)]
        agg.histogram.add_many(ratio)
        agg.counts_of_n = Counter(int(n) for n in frame["n_winning"].tolist())
        agg.n_profitable = int((frame["total_profit"] > 0).sum())
        agg.max_n_winning = int(frame["n_winning"].max())
        agg.max_sum_winning = int(frame["sum_winning"].max())
        return agg

    @classmethod
    def from_sessions(cls, sessions: list[SessionStats]) -> AggregateStats:
        return cls.from_frame(pd.DataFrame([s.as_row() for s in sessions], columns=list(STAT_FIELDS)))

    def merge(self, other: AggregateStats) -> AggregateStats:
        return AggregateStats(
            replications=self.replications + other.replications,
            moments={name: self.moments[name].merge(other.moments[name]) for name in STAT_FIELDS},
            totals={name: self.totals[name] + other.totals[name] for name in STAT_FIELDS},
            histogram=self.histogram.merge(other.histogram),
            counts_of_n=self.counts_of_n + other.counts_of_n,
            n_profitable=self.n_profitable + other.n_profitable,
            max_n_winning=max(self.max_n_winning, other.max_n_winning),
            max_sum_winning=max(self.max_sum_winning, other.max_sum_winning),
        )

    def mean(self, name: str) -> float:
        return self.moments[name].mean

    def se(self, name: str) -> float:
        return self.moments[name].stderr

    def exact_mean(self, name: str) -> Fraction:
        if self.replications < 1:
            raise DomainError("no replications aggregated")
        return Fraction(self.totals[name], self.replications)

    def amount_per(self, kind: str) -> float | None:
        """Mean amount per progression of ``kind`` (ratio of means)."""
        count = self.totals[f"n_{kind}"]
        if count == 0:
            return None
        return self.totals[f"sum_{kind}"] / count

    @property
    def p_profitable(self) -> float:
        if self.replications < 1:
            raise DomainError("no replications aggregated")
        return self.n_profitable / self.replications

    @property
    def p_profitable_se(self) -> float:
        return stderr_of_proportion(self.n_profitable, self.replications)
