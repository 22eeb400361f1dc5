"""Reported winning progressions and published simulation estimates."""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

import pandas as pd

from casino_wager_lab.experiments.models import LeighReference, LeighSummary
from casino_wager_lab.stats import poisson_ccdf

REFERENCE_PATH = Path(__file__).parent / "leigh_reference.json"


@lru_cache(maxsize=1)
def load_reference() -> LeighReference:
    """Load the shipped reference data from leigh_reference.json."""
    with open(REFERENCE_PATH) as f:
        return LeighReference(**json.load(f))


def progressions_frame(ref: LeighReference | None = None) -> pd.DataFrame:
    ref = ref or load_reference()
    return pd.DataFrame([p.model_dump() for p in ref.progressions])


def day_totals(ref: LeighReference | None = None) -> pd.DataFrame:
    """Per-day progression counts, listed amounts and the reported subtotals.

    Where an amount is unknown the listed sum falls short of the subtotal;
    ``unlisted`` is the part of the subtotal not assigned to any progression.
    """
    ref = ref or load_reference()
    frame = progressions_frame(ref)
    grouped = frame.groupby("day").agg(progressions=("number", "count"), listed=("amount", "sum"))
    grouped["subtotal"] = [ref.day_subtotals[day] for day in grouped.index]
    grouped["unlisted"] = grouped["subtotal"] - grouped["listed"].astype(int)
    return grouped.reset_index()


def comparison(summary: LeighSummary | None = None, ref: LeighReference | None = None) -> pd.DataFrame:
    """Published estimates side by side with the reported outcome and, if given, a new run."""
    ref = ref or load_reference()
    est = ref.simulation_estimates
    observed_n = len(ref.progressions)
    rows = [
        ("number of winning progressions", est["n_winning"], observed_n, summary and summary.n_winning_mean),
        ("amount won per winning progression", est["amount_per_winning"], ref.total_won / observed_n, summary and summary.amount_per_winning),
        ("total amount won from winning progressions", est["sum_winning"], ref.total_won, summary and summary.sum_winning_mean),
        ("number of losing progressions", est["n_losing"], None, summary and summary.n_losing_mean),
        ("amount lost per losing progression", est["amount_per_losing"], None, summary and summary.amount_per_losing),
        ("total amount lost from losing progressions", est["sum_losing"], None, summary and summary.sum_losing_mean),
        ("number of incomplete progressions", est["n_incomplete"], None, summary and summary.n_incomplete_mean),
        ("amount won per incomplete progression", est["amount_per_incomplete"], None, summary and summary.amount_per_incomplete),
        ("total amount won from incomplete progressions", est["sum_incomplete"], None, summary and summary.sum_incomplete_mean),
        ("total amount bet", est["total_bet"], None, summary and summary.total_bet_mean),
        ("proportion of profitable sessions", est["p_profitable"], None, summary and summary.p_profitable),
    ]
    return pd.DataFrame(rows, columns=["statistic", "published", "reported", "this_run"])


def observed_tail_probability(mu: float, ref: LeighReference | None = None) -> float:
    """P(Poisson(mu) >= number of reported winning progressions)."""
    ref = ref or load_reference()
    return poisson_ccdf(mu, len(ref.progressions))
