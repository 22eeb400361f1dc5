"""Betting systems: reverse Labouchere and martingale stake policies."""

from casino_wager_lab.systems.labouchere import (
    LabConfig,
    LabState,
    ProgressionKind,
    ProgressionOutcome,
    ReverseLabouchere,
    apply,
    called_bet,
    finalize,
    run_scenario,
)
from casino_wager_lab.systems.martingale import FlatStake, Martingale, StakePolicy

__all__ = [
    "FlatStake",
    "LabConfig",
    "LabState",
    "Martingale",
    "ProgressionKind",
    "ProgressionOutcome",
    "ReverseLabouchere",
    "StakePolicy",
    "apply",
    "called_bet",
    "finalize",
    "run_scenario",
]
