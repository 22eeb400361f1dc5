"""Tests for wager triples, RTP/HA and ratio tracking."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from casino_wager_lab.core import BoundSpec, RatioState, Wager, check_bounds, ratio_update, rtp_ha, settle
from casino_wager_lab.core.models import INT64_MAX
from casino_wager_lab.errors import AccumulatorOverflowError, DomainError

wagers = st.tuples(st.integers(0, 10_000), st.integers(0, 20_000)).map(
    lambda t: settle(t[0], t[1] if t[0] else 0)
)


class TestSettle:
    def test_zero_bet(self):
        assert settle(0, 0).profit == 0

    def test_even_money_win(self):
        assert settle(1, 2) == Wager(bet=1, ret=2, profit=1)

    def test_total_loss(self):
        assert settle(5, 0).profit == -5

    def test_negative_input_rejected(self):
        with pytest.raises(DomainError):
            settle(-1, 0)
        with pytest.raises(DomainError):
            settle(1, -1)

    def test_wager_checks_profit(self):
        with pytest.raises(DomainError):
            Wager(bet=2, ret=3, profit=2)

    def test_zero_bet_cannot_return(self):
        with pytest.raises(DomainError):
            settle(0, 5)

    def test_fractional_return(self):
        w = settle(1, Fraction(36, 5))
        assert w.profit == Fraction(31, 5)


class TestRtpHa:
    def test_three_card_poker(self):
        result = rtp_ha(Fraction(-686689, 20358520), Fraction(370, 221))
        assert result.ha == Fraction(686689, 34084400)
        assert float(result.ha) == pytest.approx(0.020147, abs=1e-6)

    def test_craps_with_odds(self):
        assert rtp_ha(Fraction(-7, 495), Fraction(34, 9)).ha == Fraction(7, 1870)

    def test_fair_game(self):
        result = rtp_ha(0, 1)
        assert result.ha == 0
        assert result.rtp == 1

    def test_rtp_plus_ha_is_one(self):
        result = rtp_ha(Fraction(-1, 74), 1)
        assert result.rtp + result.ha == 1

    @pytest.mark.parametrize("e_bet", [0, -1])
    def test_nonpositive_bet_rejected(self, e_bet):
        with pytest.raises(DomainError):
            rtp_ha(Fraction(-1, 37), e_bet)


class TestRatioState:
    def test_first_update(self):
        state = ratio_update(RatioState(), settle(1, 2))
        assert state.n == 1
        assert state.profit_ratio == 1.0

    def test_update_is_pure(self):
        state = RatioState()
        ratio_update(state, settle(1, 2))
        assert state == RatioState()

    def test_flat_bets(self):
        state = RatioState()
        for i in range(1000):
            state.update(settle(1, 2 if i < 490 else 0))
        assert state.exact_profit_ratio() == Fraction(-2, 100)

    def test_ratio_undefined_without_bets(self):
        state = RatioState().update(settle(0, 0))
        with pytest.raises(DomainError):
            state.exact_profit_ratio()
        with pytest.raises(DomainError):
            state.exact_return_ratio()

    def test_overflow_is_an_error(self):
        state = RatioState(n=1, cum_bet=INT64_MAX, cum_ret=INT64_MAX, cum_profit=0)
        with pytest.raises(AccumulatorOverflowError):
            state.update(settle(1, 0))

    def test_merge_overflow_is_an_error(self):
        half = RatioState(n=1, cum_bet=INT64_MAX // 2 + 1, cum_ret=0, cum_profit=-(INT64_MAX // 2 + 1))
        with pytest.raises(AccumulatorOverflowError):
            half.merge(half)

    @given(st.lists(wagers, max_size=40), st.integers(0, 40))
    @settings(max_examples=50)
    def test_merge_matches_sequential_updates(self, stream, cut):
        whole = RatioState()
        left, right = RatioState(), RatioState()
        for i, w in enumerate(stream):
            whole.update(w)
            (left if i < cut else right).update(w)
        merged = left.merge(right)
        assert merged == whole
        assert merged.cum_profit == merged.cum_ret - merged.cum_bet

    @given(wagers, wagers, wagers)
    def test_merge_is_associative_and_commutative(self, a, b, c):
        sa, sb, sc = (RatioState().update(w) for w in (a, b, c))
        assert sa.merge(sb).merge(sc) == sa.merge(sb.merge(sc))
        assert sa.merge(sb) == sb.merge(sa)


class TestBounds:
    spec = BoundSpec(Fraction(-1, 37), Fraction(-1, 74))

    def test_rho_is_one_plus_chi(self):
        assert self.spec.rho_lo == Fraction(36, 37)
        assert self.spec.rho_hi == Fraction(73, 74)

    def test_unordered_bracket_rejected(self):
        with pytest.raises(DomainError):
            BoundSpec(Fraction(0), Fraction(-1, 37))

    def test_from_house_advantages(self):
        spec = BoundSpec.from_house_advantages([Fraction(1, 74), Fraction(1, 37)])
        assert spec == self.spec

    def test_constant_trace_at_upper_end_passes(self):
        report = check_bounds([-1 / 74] * 10, self.spec, burn_in=2)
        assert report.passed
        assert report.tail_length == 8

    def test_zero_trace_fails(self):
        report = check_bounds([0.0] * 10, self.spec, burn_in=0, tol=1e-6)
        assert not report.passed
        assert report.violations == list(range(10))

    def test_burn_in_skips_early_excursions(self):
        trace = [1.0, -0.5, -0.02, -0.016]
        report = check_bounds(trace, self.spec, burn_in=2)
        assert report.passed
        assert report.min_tail == -0.02
        assert report.max_tail == -0.016

    def test_empty_tail_is_an_error(self):
        with pytest.raises(DomainError):
            check_bounds([-0.02], self.spec, burn_in=1)
