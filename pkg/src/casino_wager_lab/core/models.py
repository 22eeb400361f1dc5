"""Wager triples, running ratio accumulators and ratio brackets."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Union

from casino_wager_lab.errors import AccumulatorOverflowError, DomainError

# Integral francs almost everywhere; Fraction only for payouts such as 36/5.
Money = Union[int, Fraction]

INT64_MAX = 2**63 - 1


def _as_money(value: Money) -> Money:
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


@dataclass(frozen=True, slots=True)
class Wager:
    """A resolved wager: amount bet, amount returned and the resulting profit."""

    bet: Money
    ret: Money
    profit: Money

    def __post_init__(self) -> None:
        if self.bet < 0 or self.ret < 0:
            raise DomainError(f"bet and return must be nonnegative, got {self.bet}, {self.ret}")
        if self.profit != self.ret - self.bet:
            raise DomainError(
                f"profit {self.profit} does not equal return {self.ret} minus bet {self.bet}"
            )
        if self.bet == 0 and self.ret != 0:
            raise DomainError("a zero bet cannot return money")


@dataclass(slots=True)
class RatioState:
    """Cumulative bet, return and profit over a stream of wagers.

    Updated in place by `update`; `merge` combines the states of disjoint
    streams and is associative and commutative.
    """

    n: int = 0
    cum_bet: Money = 0
    cum_ret: Money = 0
    cum_profit: Money = 0

    def update(self, wager: Wager) -> RatioState:
        self.n += 1
        self.cum_bet += wager.bet
        self.cum_ret += wager.ret
        self.cum_profit += wager.profit
        return self._checked()

    def merge(self, other: RatioState) -> RatioState:
        return RatioState(
            n=self.n + other.n,
            cum_bet=_as_money(self.cum_bet + other.cum_bet),
            cum_ret=_as_money(self.cum_ret + other.cum_ret),
            cum_profit=_as_money(self.cum_profit + other.cum_profit),
        )._checked()

    def _checked(self) -> RatioState:
        if self.cum_bet > INT64_MAX or self.cum_ret > INT64_MAX or abs(self.cum_profit) > INT64_MAX:
            raise AccumulatorOverflowError(f"accumulator overflow after {self.n} wagers")
        return self

    def copy(self) -> RatioState:
        return RatioState(self.n, self.cum_bet, self.cum_ret, self.cum_profit)

    def exact_profit_ratio(self) -> Fraction:
        """Total profit over total amount bet, exactly."""
        if self.cum_bet <= 0:
            raise DomainError("profit ratio is undefined before any money is bet")
        return Fraction(self.cum_profit) / Fraction(self.cum_bet)

    def exact_return_ratio(self) -> Fraction:
        if self.cum_bet <= 0:
            raise DomainError("return ratio is undefined before any money is bet")
        return Fraction(self.cum_ret) / Fraction(self.cum_bet)

    @property
    def profit_ratio(self) -> float:
        return float(self.exact_profit_ratio())

    @property
    def return_ratio(self) -> float:
        return float(self.exact_return_ratio())


@dataclass(frozen=True, slots=True)
class BoundSpec:
    """Bracket [chi_lo, chi_hi] on the profit ratio, with rho = 1 + chi."""

    chi_lo: Fraction
    chi_hi: Fraction

    def __post_init__(self) -> None:
        if self.chi_lo > self.chi_hi:
            raise DomainError(f"chi_lo {self.chi_lo} exceeds chi_hi {self.chi_hi}")

    @property
    def rho_lo(self) -> Fraction:
        return 1 + Fraction(self.chi_lo)

    @property
    def rho_hi(self) -> Fraction:
        return 1 + Fraction(self.chi_hi)

    @classmethod
    def from_house_advantages(cls, advantages: list[Fraction]) -> BoundSpec:
        """Bracket implied by several betting opportunities with these house advantages."""
        if not advantages:
            raise DomainError("at least one house advantage is required")
        return cls(chi_lo=-max(advantages), chi_hi=-min(advantages))


@dataclass(frozen=True, slots=True)
class BoundReport:
    min_tail: float
    max_tail: float
    passed: bool
    tail_length: int
    tol: float
    violations: list[int] = field(default_factory=list)


class Outcome(IntEnum):
    """Result of an even-money wager; the value is the profit per unit staked."""

    WIN = 1
    TIE = 0
    LOSS = -1
