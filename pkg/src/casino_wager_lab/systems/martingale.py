"""Stake policies: flat betting and the doubling martingale."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from casino_wager_lab.core.models import Money
from casino_wager_lab.errors import DomainError


class StakePolicy(Protocol):
    """Chooses the base stake before each coup (or round) from past results."""

    @property
    def max_stake(self) -> int | None: ...

    def next_stake(self) -> int: ...

    def record(self, profit: Money) -> None: ...


@dataclass
class FlatStake:
    stake: int = 1

    def __post_init__(self) -> None:
        if self.stake < 1:
            raise DomainError(f"stake must be positive, got {self.stake}")

    @property
    def max_stake(self) -> int:
        return self.stake

    def next_stake(self) -> int:
        return self.stake

    def record(self, profit: Money) -> None:
        pass


@dataclass
class Martingale:
    """Double after every loss, back to ``base`` after a win or tie.

    With a ``limit`` the stake returns to ``base`` whenever doubling would
    exceed it; without one the stake is unbounded.
    """

    base: int = 1
    limit: int | None = None
    stake: int = field(init=False)

    def __post_init__(self) -> None:
        if self.base < 1:
            raise DomainError(f"base stake must be positive, got {self.base}")
        if self.limit is not None and self.limit < self.base:
            raise DomainError(f"limit {self.limit} is below the base stake {self.base}")
        self.stake = self.base

    @property
    def max_stake(self) -> int | None:
        return self.limit

    def next_stake(self) -> int:
        return self.stake

    def record(self, profit: Money) -> None:
        doubled = 2 * self.stake
        if profit < 0 and (self.limit is None or doubled <= self.limit):
            self.stake = doubled
        else:
            self.stake = self.base


def require_bounded(policy: StakePolicy) -> StakePolicy:
    if policy.max_stake is None:
        raise DomainError(f"{type(policy).__name__} has no betting limit; bounded stakes are required")
    return policy
