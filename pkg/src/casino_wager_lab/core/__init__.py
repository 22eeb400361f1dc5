"""Wager triples, RTP/HA and profit-ratio tracking."""

from casino_wager_lab.core.models import BoundReport, BoundSpec, Money, Outcome, RatioState, Wager
from casino_wager_lab.core.ratios import RtpHa, check_bounds, log_checkpoints, ratio_update, rtp_ha, settle

__all__ = [
    "BoundReport",
    "BoundSpec",
    "Money",
    "Outcome",
    "RatioState",
    "RtpHa",
    "Wager",
    "check_bounds",
    "log_checkpoints",
    "ratio_update",
    "rtp_ha",
    "settle",
]
