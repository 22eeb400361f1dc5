"""The replicated Leigh roulette experiment and its reference data."""

from casino_wager_lab.experiments.aggregate import AggregateStats, SessionStats
from casino_wager_lab.experiments.leigh import (
    PoissonReport,
    SessionConfig,
    aggregate_sessions,
    consistency_ratio,
    poisson_report,
    run_experiment,
    run_session,
    simulate_sessions,
    summarize,
)
from casino_wager_lab.experiments.models import LeighReference, LeighSummary, RunManifest
from casino_wager_lab.experiments.reference import load_reference

__all__ = [
    "AggregateStats",
    "LeighReference",
    "LeighSummary",
    "PoissonReport",
    "RunManifest",
    "SessionConfig",
    "SessionStats",
    "aggregate_sessions",
    "consistency_ratio",
    "load_reference",
    "poisson_report",
    "run_experiment",
    "run_session",
    "simulate_sessions",
    "summarize",
]
