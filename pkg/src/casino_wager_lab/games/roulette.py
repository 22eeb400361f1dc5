"""Single-zero roulette: pockets, even chances, number bets and the en prison coup."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np
import pandas as pd

from casino_wager_lab.core import BoundSpec, Outcome, RatioState, Wager, log_checkpoints, settle
from casino_wager_lab.core.models import Money
from casino_wager_lab.errors import DomainError, ScriptExhaustedError
from casino_wager_lab.rng import RandomSource, ScriptedStream, Stream
from casino_wager_lab.stats import StreamingMoments
from casino_wager_lab.systems.martingale import FlatStake, StakePolicy

logger = logging.getLogger(__name__)

POCKETS = 37
RED_NUMBERS = frozenset({1, 3, 5, 7, 9, 12, 14, 16, 18, 19, 21, 23, 25, 27, 30, 32, 34, 36})


class Color(str, Enum):
    RED = "red"
    BLACK = "black"
    GREEN = "green"


class EvenChance(str, Enum):
    """The six even-money chances, in the order used for coup outcomes."""

    RED = "red"
    BLACK = "black"
    ODD = "odd"
    EVEN = "even"
    LOW = "low"  # 1-18
    HIGH = "high"  # 19-36

    @property
    def index(self) -> int:
        return _CHANCE_INDEX[self]

    def hits(self, value: int) -> bool:
        if value == 0:
            return False
        match self:
            case EvenChance.RED:
                return value in RED_NUMBERS
            case EvenChance.BLACK:
                return value not in RED_NUMBERS
            case EvenChance.ODD:
                return value % 2 == 1
            case EvenChance.EVEN:
                return value % 2 == 0
            case EvenChance.LOW:
                return value <= 18
            case EvenChance.HIGH:
                return value >= 19


EVEN_CHANCES: tuple[EvenChance, ...] = tuple(EvenChance)
_CHANCE_INDEX = {chance: i for i, chance in enumerate(EVEN_CHANCES)}


class SettlementMode(str, Enum):
    EN_PRISON = "enprison"
    PARTAGER = "partager"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class Pocket:
    value: int
    color: Color

    def __post_init__(self) -> None:
        if not 0 <= self.value < POCKETS:
            raise DomainError(f"pocket must be in 0..36, got {self.value}")


def _color(value: int) -> Color:
    if value == 0:
        return Color.GREEN
    return Color.RED if value in RED_NUMBERS else Color.BLACK


WHEEL: tuple[Pocket, ...] = tuple(Pocket(v, _color(v)) for v in range(POCKETS))


def pocket(value: int) -> Pocket:
    if not 0 <= value < POCKETS:
        raise DomainError(f"pocket must be in 0..36, got {value}")
    return WHEEL[value]


def color(value: int) -> Color:
    return pocket(value).color


@dataclass(frozen=True, slots=True)
class CoupResult:
    """One resolved coup: the spins it took and each even chance's outcome.

    Single-spin coups (partager or no zero rule) keep ``resolver_pocket`` equal
    to ``first_pocket`` even when that is zero.
    """

    spins_used: int
    first_pocket: Pocket
    resolver_pocket: Pocket
    outcomes: tuple[Outcome, ...]

    def outcome(self, chance: EvenChance) -> Outcome:
        return self.outcomes[chance.index]


def _straight_outcomes(value: int) -> tuple[Outcome, ...]:
    return tuple(Outcome.WIN if c.hits(value) else Outcome.LOSS for c in EVEN_CHANCES)


def _prison_outcomes(value: int) -> tuple[Outcome, ...]:
    return tuple(Outcome.TIE if c.hits(value) else Outcome.LOSS for c in EVEN_CHANCES)


_STRAIGHT = tuple(_straight_outcomes(v) for v in range(POCKETS))
_PRISON = tuple(_prison_outcomes(v) for v in range(POCKETS))


def spin(stream: RandomSource) -> Pocket:
    return WHEEL[stream.next_below(POCKETS)]


def resolve_coup(stream: RandomSource) -> CoupResult:
    """Spin until a nonzero pocket; after a zero every even chance is imprisoned."""
    first = stream.next_below(POCKETS)
    if first:
        return CoupResult(1, WHEEL[first], WHEEL[first], _STRAIGHT[first])
    spins = 2
    resolver = stream.next_below(POCKETS)
    while not resolver:
        spins += 1
        resolver = stream.next_below(POCKETS)
    return CoupResult(spins, WHEEL[0], WHEEL[resolver], _PRISON[resolver])


def spin_coup(stream: RandomSource) -> CoupResult:
    """A single-spin coup for games without the en prison rule."""
    value = stream.next_below(POCKETS)
    return CoupResult(1, WHEEL[value], WHEEL[value], _STRAIGHT[value])


_STRAIGHT_TABLE = np.array(_STRAIGHT, dtype=np.int8)
_PRISON_TABLE = np.array(_PRISON, dtype=np.int8)


def even_chance_block(stream: RandomSource, coups: int) -> np.ndarray:
    """Outcomes of ``coups`` en prison coups, one row per coup and one column per even chance.

    A seeded `Stream` draws the whole block at once; after a zero the
    resolver is uniform on 1-36, as spinning until a nonzero pocket gives.
    Other sources go through `resolve_coup` coup by coup.
    """
    if coups < 1:
        raise DomainError(f"coups must be positive, got {coups}")
    if not isinstance(stream, Stream):
        return np.array([resolve_coup(stream).outcomes for _ in range(coups)], dtype=np.int8)
    first = stream.integers(POCKETS, coups)
    block = _STRAIGHT_TABLE[first]
    zeros = np.flatnonzero(first == 0)
    if zeros.size:
        block[zeros] = _PRISON_TABLE[stream.integers(POCKETS - 1, zeros.size) + 1]
    return block


@dataclass(frozen=True)
class NumberSet:
    numbers: frozenset[int]

    def __post_init__(self) -> None:
        if not 1 <= len(self.numbers) <= 36:
            raise DomainError(f"a number bet covers 1..36 numbers, got {len(self.numbers)}")
        if any(not 1 <= n <= 36 for n in self.numbers):
            raise DomainError(f"number bets cover pockets 1..36 only, got {sorted(self.numbers)}")

    @property
    def m(self) -> int:
        return len(self.numbers)

    def __str__(self) -> str:
        return "+".join(str(n) for n in sorted(self.numbers))


@dataclass(frozen=True)
class BetSpec:
    target: EvenChance | NumberSet
    stake: Money = 1

    def __post_init__(self) -> None:
        if self.stake < 0:
            raise DomainError(f"stake must be nonnegative, got {self.stake}")

    def scaled(self, factor: int) -> BetSpec:
        return BetSpec(self.target, self.stake * factor)

    def __str__(self) -> str:
        target = self.target.value if isinstance(self.target, EvenChance) else str(self.target)
        return f"{target}:{self.stake}"


def _money(value: Fraction) -> Money:
    return value.numerator if value.denominator == 1 else value


def settle_bet(bet: BetSpec, coup: CoupResult, mode: SettlementMode) -> Wager:
    """Settle one bet against a resolved coup under the given zero rule."""
    stake = bet.stake
    if stake < 0:
        raise DomainError(f"stake must be nonnegative, got {stake}")
    first = coup.first_pocket.value
    target = bet.target
    if isinstance(target, NumberSet):
        if target.m == 0:
            raise DomainError("a number bet must cover at least one number")
        ret = _money(Fraction(stake * 36, target.m)) if first in target.numbers else 0
        return settle(stake, ret)
    if mode is SettlementMode.EN_PRISON:
        outcome = coup.outcomes[target.index]
    elif first == 0:
        ret = _money(Fraction(stake, 2)) if mode is SettlementMode.PARTAGER else 0
        return settle(stake, ret)
    else:
        outcome = _STRAIGHT[first][target.index]
    if outcome is Outcome.WIN:
        return settle(stake, 2 * stake)
    if outcome is Outcome.TIE:
        return settle(stake, stake)
    return settle(stake, 0)


def exact_expected_profit(target: EvenChance | NumberSet, mode: SettlementMode) -> Fraction:
    """Expected profit per unit staked, by enumerating the wheel."""
    bet = BetSpec(target, 1)
    total = Fraction(0)
    for value in range(1, POCKETS):
        coup = CoupResult(1, WHEEL[value], WHEEL[value], _STRAIGHT[value])
        total += Fraction(settle_bet(bet, coup, mode).profit, POCKETS)
    if mode is SettlementMode.EN_PRISON:
        for value in range(1, POCKETS):
            coup = CoupResult(2, WHEEL[0], WHEEL[value], _PRISON[value])
            total += Fraction(settle_bet(bet, coup, mode).profit, POCKETS * 36)
    else:
        coup = CoupResult(1, WHEEL[0], WHEEL[0], _STRAIGHT[0])
        total += Fraction(settle_bet(bet, coup, mode).profit, POCKETS)
    return total


# Profit per unit on an even chance under en prison.
EVEN_CHANCE_PROFIT: dict[int, Fraction] = {
    1: Fraction(18, 37),
    0: Fraction(1, 74),
    -1: Fraction(18, 37) + Fraction(1, 74),
}
EVEN_CHANCE_MEAN = sum(x * p for x, p in EVEN_CHANCE_PROFIT.items())
EVEN_CHANCE_VARIANCE = sum(x * x * p for x, p in EVEN_CHANCE_PROFIT.items()) - EVEN_CHANCE_MEAN**2
MEAN_SPINS_PER_COUP = Fraction(37, 36)


def bound_spec_for(bets: list[BetSpec], mode: SettlementMode) -> BoundSpec:
    """Profit-ratio bracket for a fixed mix of bets under the given zero rule."""
    return BoundSpec.from_house_advantages([-exact_expected_profit(b.target, mode) for b in bets])


def parse_bets(text: str) -> list[BetSpec]:
    """Parse ``red:1,black:2,17:1,1+2+3:5``; the stake defaults to 1."""
    bets = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        target_text, _, stake_text = item.partition(":")
        try:
            stake = int(stake_text) if stake_text else 1
        except ValueError:
            raise DomainError(f"invalid stake in bet {item!r}") from None
        target_text = target_text.strip().lower()
        try:
            target: EvenChance | NumberSet = EvenChance(target_text)
        except ValueError:
            try:
                numbers = [int(n) for n in target_text.split("+")]
            except ValueError:
                raise DomainError(f"unknown bet target {target_text!r}") from None
            if len(set(numbers)) != len(numbers):
                raise DomainError(f"duplicate numbers in bet {item!r}")
            target = NumberSet(frozenset(numbers))
        bets.append(BetSpec(target, stake))
    if not bets:
        raise DomainError("no bets given")
    return bets


@dataclass
class RouletteRun:
    mode: SettlementMode
    bets: list[BetSpec]
    ratio: RatioState
    spins: int
    profit_moments: StreamingMoments
    bet_moments: StreamingMoments
    first_bet_outcomes: Counter = field(default_factory=Counter)
    trace: pd.DataFrame = field(default_factory=pd.DataFrame)
    positive_after_every_win: bool = True

    @property
    def coups(self) -> int:
        return self.ratio.n

    @property
    def mean_spins(self) -> float:
        return self.spins / self.coups

    def ratio_stderr(self) -> float:
        """Standard error of the profit ratio, by the delta method on per-coup means."""
        if self.coups < 2 or self.bet_moments.mean == 0:
            return 0.0
        return self.profit_moments.std / (math.sqrt(self.coups) * self.bet_moments.mean)


def simulate_roulette(
    stream: RandomSource,
    coups: int,
    bets: list[BetSpec],
    mode: SettlementMode = SettlementMode.EN_PRISON,
    policy: StakePolicy | None = None,
    checkpoints: list[int] | None = None,
) -> RouletteRun:
    """Play ``coups`` coups with a fixed bet mix, scaled each coup by the stake policy."""
    if coups < 1:
        raise DomainError(f"coups must be positive, got {coups}")
    policy = policy or FlatStake(1)
    resolve = resolve_coup if mode is SettlementMode.EN_PRISON else spin_coup
    marks = set(checkpoints or log_checkpoints(coups))
    ratio = RatioState()
    profit_moments = StreamingMoments()
    bet_moments = StreamingMoments()
    outcomes: Counter = Counter()
    rows = []
    spins = 0
    positive_after_wins = True
    for i in range(1, coups + 1):
        coup = resolve(stream)
        spins += coup.spins_used
        factor = policy.next_stake()
        coup_bet: Money = 0
        coup_profit: Money = 0
        for j, bet in enumerate(bets):
            wager = settle_bet(bet.scaled(factor), coup, mode)
            coup_bet += wager.bet
            coup_profit += wager.profit
            if j == 0 and wager.bet:
                outcomes[Fraction(wager.profit) / wager.bet] += 1
        ratio.update(settle(coup_bet, coup_bet + coup_profit))
        policy.record(coup_profit)
        profit_moments.update(float(coup_profit))
        bet_moments.update(float(coup_bet))
        if coup_profit > 0 and ratio.cum_profit <= 0:
            positive_after_wins = False
        if i in marks:
            rows.append(
                {
                    "coup": i,
                    "spins": spins,
                    "ratio_x": ratio.profit_ratio if ratio.cum_bet else float("nan"),
                    "ratio_r": ratio.return_ratio if ratio.cum_bet else float("nan"),
                }
            )
    logger.info(f"Simulated {coups} roulette coups ({spins} spins), ratio {ratio.profit_ratio:.6f}")
    return RouletteRun(
        mode=mode,
        bets=bets,
        ratio=ratio,
        spins=spins,
        profit_moments=profit_moments,
        bet_moments=bet_moments,
        first_bet_outcomes=outcomes,
        trace=pd.DataFrame(rows),
        positive_after_every_win=positive_after_wins,
    )


def coups_from_pockets(pockets: list[int]) -> list[CoupResult]:
    """Group a scripted spin sequence into en prison coups."""
    stream = ScriptedStream(pockets)
    coups = []
    while stream.remaining:
        try:
            coups.append(resolve_coup(stream))
        except ScriptExhaustedError:
            raise DomainError("spin script ends while a coup is still imprisoned") from None
    return coups
