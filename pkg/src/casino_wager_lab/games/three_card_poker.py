"""Three Card Poker ante-play: hand ranking, strategies, exact enumeration.

Exact results come from comparing every gambler hand with every disjoint
dealer hand (22,100 x 18,424 pairs) with integer counters; numpy does the
per-hand comparison against all dealer hands at once. Suit permutations
may be factored out, which shrinks the gambler side to one hand per
suit-equivalence class.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Callable
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from casino_wager_lab.core import RatioState, rtp_ha, settle
from casino_wager_lab.errors import DomainError
from casino_wager_lab.rng import RandomSource

logger = logging.getLogger(__name__)

RANK_CHARS = "23456789TJQKA"
SUIT_CHARS = "cdhs"
DECK_SIZE = 52
HANDS = comb(DECK_SIZE, 3)  # 22,100
DEALER_HANDS = comb(DECK_SIZE - 3, 3)  # 18,424


class Card(NamedTuple):
    rank: int  # 2..14, ace high
    suit: int  # 0..3

    @property
    def index(self) -> int:
        return (self.rank - 2) * 4 + self.suit

    @classmethod
    def from_index(cls, index: int) -> Card:
        return cls(index // 4 + 2, index % 4)

    @classmethod
    def parse(cls, text: str) -> Card:
        text = text.strip()
        if text[:2] == "10":
            text = "T" + text[2:]
        if len(text) != 2 or text[0].upper() not in RANK_CHARS or text[1].lower() not in SUIT_CHARS:
            raise DomainError(f"cannot parse card {text!r}")
        return cls(RANK_CHARS.index(text[0].upper()) + 2, SUIT_CHARS.index(text[1].lower()))

    def __str__(self) -> str:
        return RANK_CHARS[self.rank - 2] + SUIT_CHARS[self.suit]


Hand3 = tuple[Card, Card, Card]


class Category(IntEnum):
    HIGH_CARD = 0
    PAIR = 1
    FLUSH = 2
    STRAIGHT = 3
    THREE_OF_A_KIND = 4
    STRAIGHT_FLUSH = 5


class HandClass(NamedTuple):
    """Comparable hand value: category first, then the tiebreak ranks."""

    category: Category
    tiebreak: tuple[int, ...]

    @classmethod
    def high_card(cls, *ranks: int) -> HandClass:
        return cls(Category.HIGH_CARD, tuple(sorted(ranks, reverse=True)))

    def qualifies(self) -> bool:
        """Dealer plays with queen high or better."""
        return self.category > Category.HIGH_CARD or self.tiebreak[0] >= 12


# Each category's bonus on the ante, paid whether or not the gambler plays.
ANTE_BONUS = {Category.STRAIGHT: 1, Category.THREE_OF_A_KIND: 4, Category.STRAIGHT_FLUSH: 5}


def parse_hand(text: str) -> Hand3:
    cards = tuple(Card.parse(tok) for tok in text.replace(",", " ").split())
    if len(cards) != 3:
        raise DomainError(f"a hand has three cards, got {len(cards)} in {text!r}")
    return cards  # type: ignore[return-value]


def tcp_rank(hand: Hand3) -> HandClass:
    if len(hand) != 3 or len(set(hand)) != 3:
        raise DomainError(f"a hand needs three distinct cards, got {[str(c) for c in hand]}")
    ranks = sorted((c.rank for c in hand), reverse=True)
    flush = hand[0].suit == hand[1].suit == hand[2].suit
    distinct = len(set(ranks))
    if distinct == 1:
        return HandClass(Category.THREE_OF_A_KIND, (ranks[0],))
    if distinct == 2:
        pair = ranks[1]
        kicker = ranks[0] if ranks[0] != pair else ranks[2]
        return HandClass(Category.PAIR, (pair, kicker))
    if ranks == [14, 3, 2]:
        straight_high = 3  # A-2-3 is the lowest straight
    elif ranks[0] - ranks[2] == 2:
        straight_high = ranks[0]
    else:
        straight_high = 0
    if straight_high:
        category = Category.STRAIGHT_FLUSH if flush else Category.STRAIGHT
        return HandClass(category, (straight_high,))
    return HandClass(Category.FLUSH if flush else Category.HIGH_CARD, tuple(ranks))


# Strategies

Strategy = Callable[[HandClass], bool]

OPTIMAL_THRESHOLD = HandClass.high_card(12, 6, 4)


@dataclass(frozen=True)
class ThresholdStrategy:
    """Play every hand at least as good as ``threshold``."""

    threshold: HandClass = OPTIMAL_THRESHOLD

    def __call__(self, hand: HandClass) -> bool:
        return hand >= self.threshold


def always_play(hand: HandClass) -> bool:
    return True


def always_fold(hand: HandClass) -> bool:
    return False


def tcp_strategy(hand: HandClass) -> bool:
    """The optimal rule: play unsuited Q-6-4 or better."""
    return hand >= OPTIMAL_THRESHOLD


def parse_threshold(text: str) -> HandClass:
    """``Q-6-4`` (or ``Q64``) as an unsuited high-card threshold."""
    chars = [c for c in text.upper() if c not in "- "]
    if len(chars) != 3 or any(c not in RANK_CHARS for c in chars):
        raise DomainError(f"cannot parse threshold hand {text!r}")
    return HandClass.high_card(*(RANK_CHARS.index(c) + 2 for c in chars))


# Exact enumeration


@dataclass(frozen=True)
class HandTable:
    """Every 3-card hand with its card mask, strength order and class."""

    cards: np.ndarray  # (22100, 3) card indices, ascending
    masks: np.ndarray  # uint64 bitmask of the three cards
    strength: np.ndarray  # dense rank of HandClass, higher is better
    qualifies: np.ndarray  # dealer qualification
    classes: tuple[HandClass, ...]


@lru_cache(maxsize=1)
def hand_table() -> HandTable:
    combos = list(itertools.combinations(range(DECK_SIZE), 3))
    classes = tuple(tcp_rank(tuple(Card.from_index(i) for i in combo)) for combo in combos)
    order = {hc: i for i, hc in enumerate(sorted(set(classes)))}
    cards = np.array(combos, dtype=np.int64)
    masks = np.zeros(len(combos), dtype=np.uint64)
    for col in range(3):
        masks |= np.left_shift(np.uint64(1), cards[:, col].astype(np.uint64))
    return HandTable(
        cards=cards,
        masks=masks,
        strength=np.array([order[hc] for hc in classes], dtype=np.int64),
        qualifies=np.array([hc.qualifies() for hc in classes], dtype=bool),
        classes=classes,
    )


def category_census() -> Counter:
    return Counter(hc.category for hc in hand_table().classes)


def _canonical(combo: tuple[int, ...]) -> tuple[int, ...]:
    best = None
    for perm in itertools.permutations(range(4)):
        mapped = tuple(sorted((c // 4) * 4 + perm[c % 4] for c in combo))
        if best is None or mapped < best:
            best = mapped
    return best


@lru_cache(maxsize=1)
def suit_classes() -> dict[int, int]:
    """Representative hand row -> number of hands in its suit-equivalence class."""
    table = hand_table()
    reps: dict[tuple[int, ...], int] = {}
    weights: Counter = Counter()
    for row, combo in enumerate(map(tuple, table.cards.tolist())):
        key = _canonical(combo)
        rep = reps.setdefault(key, row)
        weights[rep] += 1
    return dict(weights)


@dataclass(frozen=True)
class TcpAnalysis:
    e_bet: Fraction
    e_profit: Fraction
    ha_total: Fraction
    ha_base: Fraction
    fold_fraction: Fraction
    play_profit_sum: int  # ante-play profit summed over all gambler/dealer pairs
    bonus_sum: int  # ante bonus summed over all gambler hands


def _dealer_counts(table: HandTable, row: int) -> tuple[int, int, int, int]:
    """(no-qualify, gambler wins, ties, gambler loses) over dealer hands disjoint from ``row``."""
    disjoint = (table.masks & table.masks[row]) == 0
    strength = table.strength[disjoint]
    qualifies = table.qualifies[disjoint]
    own = table.strength[row]
    q_strength = strength[qualifies]
    return (
        int(np.count_nonzero(~qualifies)),
        int(np.count_nonzero(q_strength < own)),
        int(np.count_nonzero(q_strength == own)),
        int(np.count_nonzero(q_strength > own)),
    )


def tcp_exact(strategy: Strategy = tcp_strategy, reduce_suits: bool = True) -> TcpAnalysis:
    """Expected total bet and profit of a one-unit ante under ``strategy``."""
    table = hand_table()
    weights = suit_classes() if reduce_suits else {row: 1 for row in range(HANDS)}
    play_sum = bonus_sum = folds = 0
    for row, weight in weights.items():
        hand_class = table.classes[row]
        bonus_sum += weight * ANTE_BONUS.get(hand_class.category, 0)
        if not strategy(hand_class):
            folds += weight
            play_sum -= weight * DEALER_HANDS
            continue
        no_qualify, wins, _ties, losses = _dealer_counts(table, row)
        play_sum += weight * (no_qualify + 2 * wins - 2 * losses)
    logger.info(f"Enumerated {len(weights)} gambler hands (suit reduction: {reduce_suits})")
    e_profit = Fraction(play_sum, HANDS * DEALER_HANDS) + Fraction(bonus_sum, HANDS)
    fold_fraction = Fraction(folds, HANDS)
    e_bet = fold_fraction + 2 * (1 - fold_fraction)
    return TcpAnalysis(
        e_bet=e_bet,
        e_profit=e_profit,
        ha_total=rtp_ha(e_profit, e_bet).ha,
        ha_base=rtp_ha(e_profit, 1).ha,
        fold_fraction=fold_fraction,
        play_profit_sum=play_sum,
        bonus_sum=bonus_sum,
    )


# Simulation


def settle_hand(player: HandClass, dealer: HandClass, strategy: Strategy) -> tuple[int, int]:
    """(total bet, profit) of a one-unit ante."""
    bonus = ANTE_BONUS.get(player.category, 0)
    if not strategy(player):
        return 1, bonus - 1
    if not dealer.qualifies():
        return 2, 1 + bonus
    if player > dealer:
        return 2, 2 + bonus
    if player < dealer:
        return 2, bonus - 2
    return 2, bonus


def deal(stream: RandomSource, n_cards: int) -> list[int]:
    """Draw ``n_cards`` distinct card indices by a partial Fisher-Yates shuffle."""
    deck = list(range(DECK_SIZE))
    for i in range(n_cards):
        j = i + stream.next_below(DECK_SIZE - i)
        deck[i], deck[j] = deck[j], deck[i]
    return deck[:n_cards]


def simulate_tcp(
    stream: RandomSource, coups: int, strategy: Strategy = tcp_strategy, players: int = 1
) -> RatioState:
    """Several gamblers, each with one-unit antes, against one dealer hand per coup."""
    if coups < 1 or not 1 <= players <= 16:
        raise DomainError(f"need coups >= 1 and 1..16 players, got {coups}, {players}")
    table = hand_table()
    lookup = {tuple(c): hc for c, hc in zip(table.cards.tolist(), table.classes)}
    ratio = RatioState()
    for _ in range(coups):
        cards = deal(stream, 3 * (players + 1))
        dealer = lookup[tuple(sorted(cards[:3]))]
        coup_bet = coup_profit = 0
        for p in range(1, players + 1):
            bet, profit = settle_hand(lookup[tuple(sorted(cards[3 * p : 3 * p + 3]))], dealer, strategy)
            coup_bet += bet
            coup_profit += profit
        ratio.update(settle(coup_bet, coup_bet + coup_profit))
    return ratio
