"""Tests for Three Card Poker ranking, strategy and exact enumeration."""

from __future__ import annotations

from fractions import Fraction

import pytest

from casino_wager_lab.errors import DomainError
from casino_wager_lab.games.three_card_poker import (
    HANDS,
    OPTIMAL_THRESHOLD,
    Card,
    Category,
    HandClass,
    ThresholdStrategy,
    always_fold,
    always_play,
    category_census,
    deal,
    parse_hand,
    parse_threshold,
    settle_hand,
    simulate_tcp,
    tcp_exact,
    tcp_rank,
    tcp_strategy,
)
from casino_wager_lab.rng import derive_stream, purpose_id


def rank(text: str) -> HandClass:
    return tcp_rank(parse_hand(text))


class TestCards:
    def test_parse(self):
        assert Card.parse("Qd") == Card(12, 1)
        assert Card.parse("10h") == Card(10, 2)
        assert str(Card(14, 3)) == "As"

    def test_index_round_trip(self):
        assert all(Card.from_index(i).index == i for i in range(52))

    @pytest.mark.parametrize("text", ["Zz", "Q", "Qx"])
    def test_bad_card(self, text):
        with pytest.raises(DomainError):
            Card.parse(text)

    def test_hand_needs_three_cards(self):
        with pytest.raises(DomainError):
            parse_hand("As Ks")


class TestRank:
    def test_straight_flush(self):
        assert rank("As Ks Qs").category is Category.STRAIGHT_FLUSH

    def test_census(self):
        census = category_census()
        assert [census[c] for c in reversed(Category)] == [48, 52, 720, 1096, 3744, 16440]
        assert sum(census.values()) == HANDS

    def test_tiebreak(self):
        assert rank("Qd 6c 4h") > rank("Qd 6c 3h")

    def test_ace_low_straight_is_lowest(self):
        a23 = rank("Ah 2c 3d")
        assert a23.category is Category.STRAIGHT
        assert a23 < rank("2h 3c 4d") < rank("Qh Kc Ad")

    def test_pair_kicker(self):
        assert rank("8h 8c Ad") > rank("8d 8s Kd")
        assert rank("9h 9c 2d") > rank("8d 8s Ad")

    def test_duplicate_cards(self):
        with pytest.raises(DomainError):
            tcp_rank((Card(14, 0), Card(14, 0), Card(13, 0)))

    def test_dealer_qualification(self):
        assert rank("Qh 3c 2d").qualifies()
        assert not rank("Jh 9c 7d").qualifies()
        assert rank("2h 2c 3d").qualifies()


class TestStrategy:
    def test_boundary(self):
        assert tcp_strategy(rank("Qd 6c 4h"))
        assert not tcp_strategy(rank("Qd 6c 3h"))
        assert tcp_strategy(rank("2d 2c 3h"))

    def test_threshold_parsing(self):
        assert parse_threshold("Q-6-4") == OPTIMAL_THRESHOLD
        assert parse_threshold("q64") == OPTIMAL_THRESHOLD
        with pytest.raises(DomainError):
            parse_threshold("Q-6")


class TestSettleHand:
    def test_fold_keeps_bonus(self):
        straight = rank("5h 6c 7d")
        assert settle_hand(straight, rank("Ah Kc 2d"), always_fold) == (1, 0)

    def test_dealer_does_not_qualify(self):
        assert settle_hand(rank("2h 2c 5d"), rank("Jh 9c 7d"), always_play) == (2, 1)

    def test_win_lose_tie(self):
        dealer = rank("Qh 8c 5d")
        assert settle_hand(rank("Kh 2c 3s"), dealer, always_play) == (2, 2)
        assert settle_hand(rank("Qs 6c 4h"), dealer, always_play) == (2, -2)
        assert settle_hand(rank("Qd 8h 5c"), dealer, always_play) == (2, 0)

    def test_trips_bonus_on_a_loss(self):
        dealer = rank("Ah Ac Ad")
        assert settle_hand(rank("2h 2c 2d"), dealer, always_play) == (2, 4 - 2)


class TestExact:
    def test_optimal_strategy(self):
        a = tcp_exact(tcp_strategy)
        assert a.e_bet == Fraction(370, 221)
        assert a.fold_fraction == Fraction(72, 221)
        assert a.e_profit == Fraction(-686689, 20358520)
        assert a.ha_total == Fraction(686689, 34084400)
        assert a.ha_base == Fraction(686689, 20358520)
        assert float(a.ha_base) == pytest.approx(0.033730, abs=1e-6)

    def test_always_fold(self):
        a = tcp_exact(always_fold)
        assert a.e_bet == 1
        assert a.e_profit == -1 + Fraction(1168, 22100)
        assert a.bonus_sum == 1168

    def test_threshold_object_matches_function(self):
        assert tcp_exact(ThresholdStrategy()) == tcp_exact(tcp_strategy)

    @pytest.mark.parametrize("neighbour", ["Q-6-3", "Q-6-5"])
    def test_neighbouring_thresholds_are_worse(self, neighbour):
        optimal = tcp_exact(tcp_strategy).e_profit
        assert tcp_exact(ThresholdStrategy(parse_threshold(neighbour))).e_profit < optimal

    def test_suit_reduction_matches_full_enumeration(self):
        assert tcp_exact(tcp_strategy, reduce_suits=False) == tcp_exact(tcp_strategy, reduce_suits=True)


class TestSimulation:
    def test_deal_is_distinct(self):
        cards = deal(derive_stream(1, 0), 51)
        assert len(set(cards)) == 51

    def test_simulated_ratio(self):
        ratio = simulate_tcp(derive_stream(4, purpose_id("tcp")), 20_000, tcp_strategy, players=3)
        assert abs(ratio.profit_ratio + 686689 / 34084400) < 0.05

    def test_players_limit(self):
        with pytest.raises(DomainError):
            simulate_tcp(derive_stream(1, 0), 10, tcp_strategy, players=17)
