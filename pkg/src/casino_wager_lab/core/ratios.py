"""Wager settlement, RTP/HA and empirical ratio-bound checks."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import NamedTuple

from casino_wager_lab.core.models import BoundReport, BoundSpec, Money, RatioState, Wager
from casino_wager_lab.errors import DomainError


class RtpHa(NamedTuple):
    rtp: Fraction
    ha: Fraction


def settle(bet: Money, ret: Money) -> Wager:
    """Build the wager triple for a bet and its return."""
    if bet < 0 or ret < 0:
        raise DomainError(f"bet and return must be nonnegative, got {bet}, {ret}")
    return Wager(bet=bet, ret=ret, profit=ret - bet)


def rtp_ha(e_profit: Fraction | int, e_bet: Fraction | int) -> RtpHa:
    """Return to player and house advantage from expected profit and expected bet."""
    e_bet = Fraction(e_bet)
    if e_bet <= 0:
        raise DomainError(f"expected bet must be positive, got {e_bet}")
    ha = -Fraction(e_profit) / e_bet
    return RtpHa(rtp=1 - ha, ha=ha)


def ratio_update(state: RatioState, wager: Wager) -> RatioState:
    """Pure form of `RatioState.update`: the input state is left untouched."""
    return state.copy().update(wager)


def check_bounds(
    trace: Sequence[float],
    spec: BoundSpec,
    burn_in: int,
    tol: float = 0.0,
) -> BoundReport:
    """Check that every profit ratio after `burn_in` lies within the bracket widened by `tol`."""
    tail = list(trace[burn_in:])
    if not tail:
        raise DomainError(f"no ratios after burn-in {burn_in} (trace length {len(trace)})")
    lo = float(spec.chi_lo) - tol
    hi = float(spec.chi_hi) + tol
    violations = [burn_in + i for i, x in enumerate(tail) if not lo <= x <= hi]
    return BoundReport(
        min_tail=min(tail),
        max_tail=max(tail),
        passed=not violations,
        tail_length=len(tail),
        tol=tol,
        violations=violations,
    )


def log_checkpoints(n: int, per_decade: int = 10) -> list[int]:
    """Roughly logarithmically spaced indices 1..n, always ending at n."""
    points = {n}
    k = 0
    while True:
        value = round(10 ** (k / per_decade))
        if value >= n:
            break
        points.add(value)
        k += 1
    return sorted(points)
