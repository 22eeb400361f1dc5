"""Data models for experiment outputs and the shipped reference data."""

from __future__ import annotations

from typing import Any, ClassVar, Optional

from pydantic import BaseModel, ConfigDict, Field


class WinningProgressionRecord(BaseModel):
    """One winning progression as reported at the table."""

    day: int = Field(ge=1)
    number: int = Field(ge=1)
    bettor: str
    chance: Optional[str] = None  # None where the account does not say
    amount: Optional[int] = None  # francs; None where only the day subtotal is known


class PublishedNRow(BaseModel):
    n: int
    p_hat: float
    se: float
    poisson_mu0: float
    ccdf_hat: float
    ccdf_se: float
    poisson_mu1_ccdf: float


class LeighReference(BaseModel):
    source: str = ""
    days: int = 8
    coups_per_day: int = 360
    progressions: list[WinningProgressionRecord] = Field(default_factory=list)
    day_subtotals: dict[int, int] = Field(default_factory=dict)
    total_won: int = 0
    simulation_estimates: dict[str, float] = Field(default_factory=dict)
    n_distribution: list[PublishedNRow] = Field(default_factory=list)


class Summary(BaseModel):
    """A JSON summary document; each has a schema under `schemas/`."""

    model_config = ConfigDict(extra="forbid")

    schema_name: ClassVar[str]


class LeighSummary(Summary):
    """The summary.json document of a Leigh experiment run."""

    schema_name = "leigh_summary"

    replications: int
    days: int
    coups_per_day: int
    n_winning_mean: float
    n_winning_se: float
    n_losing_mean: float
    n_losing_se: float
    n_incomplete_mean: float
    n_incomplete_se: float
    sum_winning_mean: float
    sum_winning_se: float
    sum_losing_mean: float
    sum_losing_se: float
    sum_incomplete_mean: float
    sum_incomplete_se: float
    sum_winning_sys_mean: float
    sum_losing_sys_mean: float
    sum_incomplete_sys_mean: float
    total_bet_mean: float
    total_bet_se: float
    total_profit_mean: float
    total_profit_se: float
    amount_per_winning: Optional[float]
    amount_per_losing: Optional[float]
    amount_per_incomplete: Optional[float]
    p_profitable: float
    p_profitable_se: float
    consistency_ratio: float
    consistency_ratio_exact: str
    mu0: float
    mu1: float
    log10_tail27: float
    max_n_winning: int
    max_sum_winning: int
    bound_violations: list[int] = Field(default_factory=list)


class RunManifest(BaseModel):
    """Everything needed to rerun a command and reproduce its payload."""

    command: str
    config: dict[str, Any]
    master_seed: int
    version: str
    workers: int
    wall_time_seconds: float
    cache_hit: bool = False
    outputs: list[str] = Field(default_factory=list)


class TcpSummary(Summary):
    """tcp_summary.json; exact values are written as ``p/q`` strings."""

    schema_name = "tcp_summary"

    strategy: str
    reduce_suits: bool
    e_bet: str
    e_profit: str
    ha_total: str
    ha_base: str
    fold_fraction: str
    ha_total_float: float
    seed: int
    players: int
    simulated_coups: int = 0
    simulated_profit_ratio: Optional[float] = None


class CrapsSummary(Summary):
    schema_name = "craps_summary"

    odds: str
    system: str
    limit: Optional[int] = None
    seed: int
    rounds: int
    e_bet: str
    e_profit: str
    ha_total: str
    ha_base: str
    round_profit_ratio: float
    decision_profit_ratio: float
    mean_square_length: float


class RouletteSummary(Summary):
    schema_name = "roulette_summary"

    mode: str
    bets: list[str]
    system: str
    limit: Optional[int] = None
    seed: int
    coups: int
    spins: int
    profit_ratio: float
    profit_ratio_se: float
    chi_lo: str
    chi_hi: str
    burn_in: int
    tol_se: float
    bound_check_passed: bool
