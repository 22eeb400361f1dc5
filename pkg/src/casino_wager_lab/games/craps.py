"""Craps pass-line betting with optional 3/4/5-times free odds.

Exact expectations come from the dice-total distribution
``pi_k = (6 - |7 - k|) / 36``; the simulators roll two fair dice.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

import pandas as pd

from casino_wager_lab.core import RatioState, log_checkpoints, rtp_ha, settle
from casino_wager_lab.errors import DomainError
from casino_wager_lab.rng import RandomSource
from casino_wager_lab.stats import StreamingMoments
from casino_wager_lab.systems.martingale import FlatStake, StakePolicy, require_bounded

logger = logging.getLogger(__name__)

NATURALS = frozenset({7, 11})
CRAPS = frozenset({2, 3, 12})
POINTS = (4, 5, 6, 8, 9, 10)


class OddsPolicy(str, Enum):
    NONE = "none"
    THREE_FOUR_FIVE = "345"

    def multiple(self, point: int) -> int:
        """Odds stake per unit of pass-line stake once ``point`` is established."""
        if self is OddsPolicy.NONE:
            return 0
        return ODDS_MULTIPLES[point]


ODDS_MULTIPLES = {4: 3, 10: 3, 5: 4, 9: 4, 6: 5, 8: 5}
# Fair odds payouts as (win, per stake): 2 to 1, 3 to 2, 6 to 5.
ODDS_PAYOUTS = {4: (2, 1), 10: (2, 1), 5: (3, 2), 9: (3, 2), 6: (6, 5), 8: (6, 5)}


def pi(total: int) -> Fraction:
    if not 2 <= total <= 12:
        raise DomainError(f"dice total must be in 2..12, got {total}")
    return Fraction(6 - abs(7 - total), 36)


def craps_roll(stream: RandomSource) -> int:
    return stream.next_below(6) + stream.next_below(6) + 2


@dataclass(frozen=True, slots=True)
class CrapsDecision:
    total_bet: int
    profit: int
    rolls_used: int
    point: int | None = None

    @property
    def seven_out(self) -> bool:
        return self.point is not None and self.profit < 0


def craps_pass_decision(
    stream: RandomSource, odds: OddsPolicy = OddsPolicy.THREE_FOUR_FIVE, stake: int = 1
) -> CrapsDecision:
    """Resolve one pass-line bet, taking the policy's odds once a point is set."""
    come_out = craps_roll(stream)
    if come_out in NATURALS:
        return CrapsDecision(stake, stake, 1)
    if come_out in CRAPS:
        return CrapsDecision(stake, -stake, 1)
    odds_stake = odds.multiple(come_out) * stake
    rolls = 1
    while True:
        roll = craps_roll(stream)
        rolls += 1
        if roll == come_out:
            win, per = ODDS_PAYOUTS[come_out]
            return CrapsDecision(stake + odds_stake, stake + odds_stake * win // per, rolls, come_out)
        if roll == 7:
            return CrapsDecision(stake + odds_stake, -(stake + odds_stake), rolls, come_out)


@dataclass(frozen=True)
class CrapsAnalysis:
    odds: OddsPolicy
    e_bet: Fraction
    e_profit: Fraction
    ha_total: Fraction
    ha_base: Fraction
    p_win: Fraction


def pass_win_probability() -> Fraction:
    return pi(7) + pi(11) + sum(pi(k) * pi(k) / (pi(k) + pi(7)) for k in POINTS)


def odds_edge(point: int) -> Fraction:
    """Expected profit of a one-unit odds bet on ``point``; zero for fair odds."""
    if point not in ODDS_PAYOUTS:
        raise DomainError(f"{point} is not a point number")
    win, per = ODDS_PAYOUTS[point]
    p_win = pi(point) / (pi(point) + pi(7))
    return p_win * Fraction(win, per) - (1 - p_win)


def craps_exact(odds: OddsPolicy = OddsPolicy.THREE_FOUR_FIVE) -> CrapsAnalysis:
    """Closed-form expected total bet and profit of one pass-line decision."""
    e_bet = sum((pi(k) for k in (2, 3, 7, 11, 12)), Fraction(0))
    e_profit = pi(7) + pi(11) - pi(2) - pi(3) - pi(12)
    for k in POINTS:
        total = 1 + odds.multiple(k)
        win, per = ODDS_PAYOUTS[k]
        p_win = pi(k) / (pi(k) + pi(7))
        e_bet += pi(k) * total
        e_profit += pi(k) * (p_win * (1 + odds.multiple(k) * Fraction(win, per)) - (1 - p_win) * total)
    return CrapsAnalysis(
        odds=odds,
        e_bet=e_bet,
        e_profit=e_profit,
        ha_total=rtp_ha(e_profit, e_bet).ha,
        ha_base=rtp_ha(e_profit, 1).ha,
        p_win=pass_win_probability(),
    )


@dataclass(frozen=True, slots=True)
class CrapsRound:
    """Rolls between consecutive seven-outs and the money wagered in them."""

    length: int
    round_bet: int
    round_profit: int
    decisions: int


@dataclass
class CrapsRun:
    odds: OddsPolicy
    rounds: pd.DataFrame
    ratio: RatioState
    decision_ratio: RatioState
    unit_bet: StreamingMoments = field(default_factory=StreamingMoments)
    unit_profit: StreamingMoments = field(default_factory=StreamingMoments)

    def iter_rounds(self) -> Iterator[CrapsRound]:
        for row in self.rounds.itertuples(index=False):
            yield CrapsRound(int(row.length), int(row.round_bet), int(row.round_profit), int(row.decisions))

    @property
    def mean_square_length(self) -> float:
        return float((self.rounds["length"].astype(float) ** 2).mean())

    def ratio_trace(self, checkpoints: list[int] | None = None) -> pd.DataFrame:
        """Cumulative profit over cumulative bet after selected rounds (logarithmic by default)."""
        marks = checkpoints or log_checkpoints(len(self.rounds))
        cum_bet = self.rounds["round_bet"].cumsum()
        cum_profit = self.rounds["round_profit"].cumsum()
        rows = [i - 1 for i in marks if 1 <= i <= len(self.rounds)]
        trace = pd.DataFrame(
            {
                "round": [i + 1 for i in rows],
                "cum_bet": cum_bet.iloc[rows].to_numpy(),
                "cum_profit": cum_profit.iloc[rows].to_numpy(),
            }
        )
        trace["ratio_x"] = trace["cum_profit"] / trace["cum_bet"]
        return trace


def craps_run_rounds(
    stream: RandomSource,
    n_rounds: int,
    odds: OddsPolicy = OddsPolicy.THREE_FOUR_FIVE,
    policy: StakePolicy | None = None,
) -> CrapsRun:
    """Continuous pass-line play, totalled per round; a round ends at a seven-out.

    The stake policy sets the pass-line stake for each round from the results
    of the rounds before it.
    """
    if n_rounds < 1:
        raise DomainError(f"n_rounds must be positive, got {n_rounds}")
    policy = require_bounded(policy or FlatStake(1))
    ratio = RatioState()
    decision_ratio = RatioState()
    unit_bet = StreamingMoments()
    unit_profit = StreamingMoments()
    lengths, bets, profits, counts = [], [], [], []
    for _ in range(n_rounds):
        stake = policy.next_stake()
        length = round_bet = round_profit = decisions = 0
        while True:
            decision = craps_pass_decision(stream, odds, stake)
            decision_ratio.update(settle(decision.total_bet, decision.total_bet + decision.profit))
            unit_bet.update(decision.total_bet / stake)
            unit_profit.update(decision.profit / stake)
            length += decision.rolls_used
            round_bet += decision.total_bet
            round_profit += decision.profit
            decisions += 1
            if decision.seven_out:
                break
        ratio.update(settle(round_bet, round_bet + round_profit))
        policy.record(round_profit)
        lengths.append(length)
        bets.append(round_bet)
        profits.append(round_profit)
        counts.append(decisions)
    logger.info(f"Played {n_rounds} craps rounds, {decision_ratio.n} decisions")
    rounds = pd.DataFrame({"length": lengths, "round_bet": bets, "round_profit": profits, "decisions": counts})
    return CrapsRun(odds, rounds, ratio, decision_ratio, unit_bet, unit_profit)


def simulate_pass_line(
    stream: RandomSource, decisions: int, odds: OddsPolicy = OddsPolicy.THREE_FOUR_FIVE
) -> tuple[StreamingMoments, StreamingMoments]:
    """Moments of the per-unit total bet and profit over independent decisions."""
    if decisions < 1:
        raise DomainError(f"decisions must be positive, got {decisions}")
    bet, profit = StreamingMoments(), StreamingMoments()
    for _ in range(decisions):
        d = craps_pass_decision(stream, odds)
        bet.update(d.total_bet)
        profit.update(d.profit)
    return bet, profit
