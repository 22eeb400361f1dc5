"""The reverse Labouchere scorecard system.

The bettor stakes the sum of the first and last terms of a list. A win
appends the amount won, a loss cancels the first and last terms, a tie
changes nothing. A progression ends when the list empties (losing) or the
next called bet exceeds the house maximum (winning); the list then restarts
from ``init_list``. Called bets below the house minimum are played
virtually: nothing is staked but the list moves as if it had been.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from casino_wager_lab.core import Outcome
from casino_wager_lab.errors import DomainError, ScriptParseError


class LabConfig(BaseModel):
    """House limits and the starting scorecard."""

    model_config = ConfigDict(frozen=True)

    init_list: tuple[int, ...] = Field(default=(1, 2, 3, 4), min_length=1)
    min_bet: int = Field(default=5, ge=0)
    max_bet: int = Field(default=2600, ge=1)

    @field_validator("init_list")
    @classmethod
    def _positive_terms(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(term < 1 for term in v):
            raise ValueError("every term of the initial list must be at least 1")
        return v

    @model_validator(mode="after")
    def _limits(self) -> LabConfig:
        if self.min_bet > self.max_bet:
            raise ValueError(f"min_bet {self.min_bet} exceeds max_bet {self.max_bet}")
        if _called(self.init_list) > self.max_bet:
            raise ValueError("the initial list calls for a bet above max_bet")
        return self

    @property
    def init_sum(self) -> int:
        return sum(self.init_list)


class ProgressionKind(str, Enum):
    WINNING = "winning"
    LOSING = "losing"
    INCOMPLETE = "incomplete"


@dataclass(frozen=True, slots=True)
class ProgressionOutcome:
    kind: ProgressionKind
    amount_sys: int  # counts virtual bets
    amount_act: int  # money actually won or lost
    coups: int
    final_terms: tuple[int, ...] = ()


@dataclass(slots=True)
class LabState:
    terms: list[int]
    f_sys: int = 0
    f_act: int = 0
    coups_in_progression: int = 0

    @classmethod
    def fresh(cls, config: LabConfig) -> LabState:
        return cls(terms=list(config.init_list))

    def copy(self) -> LabState:
        return LabState(list(self.terms), self.f_sys, self.f_act, self.coups_in_progression)


class CalledBet(NamedTuple):
    amount: int
    is_virtual: bool


def _called(terms) -> int:
    return terms[0] + terms[-1] if len(terms) > 1 else terms[0]


class ReverseLabouchere:
    """A single bettor on one even chance, updated in place."""

    __slots__ = ("config", "state", "total_staked", "realized", "_min_bet", "_max_bet")

    def __init__(self, config: LabConfig, state: LabState | None = None) -> None:
        self.config = config
        self.state = state if state is not None else LabState.fresh(config)
        self.total_staked = 0
        self.realized = 0
        self._min_bet = config.min_bet
        self._max_bet = config.max_bet

    def called_bet(self) -> CalledBet:
        if not self.state.terms:
            raise DomainError("called bet requested on an empty list")
        amount = _called(self.state.terms)
        return CalledBet(amount, amount < self._min_bet)

    def play(self, outcome: Outcome) -> ProgressionOutcome | None:
        """Apply one coup's outcome; returns the progression it completed, if any."""
        done = self.play_many((outcome,))
        return done[0] if done else None

    def play_many(self, outcomes: Iterable[int]) -> list[ProgressionOutcome]:
        """Apply a run of outcomes (1 win, 0 tie, -1 loss) in order.

        Returns the progressions completed along the way; the list restarts
        after each one.
        """
        st = self.state
        terms, f_sys, f_act, coups = st.terms, st.f_sys, st.f_act, st.coups_in_progression
        staked, realized = self.total_staked, self.realized
        min_bet, max_bet = self._min_bet, self._max_bet
        completed: list[ProgressionOutcome] = []
        for outcome in outcomes:
            amount = terms[0] + terms[-1] if len(terms) > 1 else terms[0]
            real = amount >= min_bet
            if real:
                staked += amount
            coups += 1
            if outcome > 0:
                terms.append(amount)
                f_sys += amount
                if real:
                    f_act += amount
                    realized += amount
            elif outcome < 0:
                del terms[0]
                if terms:
                    terms.pop()
                f_sys -= amount
                if real:
                    f_act -= amount
                    realized -= amount
            if not terms:
                kind = ProgressionKind.LOSING
            elif (terms[0] + terms[-1] if len(terms) > 1 else terms[0]) > max_bet:
                kind = ProgressionKind.WINNING
            else:
                continue
            completed.append(ProgressionOutcome(kind, f_sys, f_act, coups, tuple(terms)))
            terms, f_sys, f_act, coups = list(self.config.init_list), 0, 0, 0
        self.state = LabState(terms, f_sys, f_act, coups)
        self.total_staked, self.realized = staked, realized
        return completed

    def finalize(self) -> ProgressionOutcome | None:
        """Close an in-flight progression (end of day) and restart the list."""
        if self.state.coups_in_progression == 0:
            return None
        return self._complete(ProgressionKind.INCOMPLETE)

    def restart(self) -> None:
        self.state = LabState.fresh(self.config)

    def _complete(self, kind: ProgressionKind) -> ProgressionOutcome:
        st = self.state
        done = ProgressionOutcome(kind, st.f_sys, st.f_act, st.coups_in_progression, tuple(st.terms))
        self.restart()
        return done


class Transition(NamedTuple):
    state: LabState
    completed: ProgressionOutcome | None


def called_bet(state: LabState, config: LabConfig) -> CalledBet:
    return ReverseLabouchere(config, state).called_bet()


def apply(state: LabState, outcome: Outcome, config: LabConfig) -> Transition:
    """Pure transition: the input state is not modified."""
    bettor = ReverseLabouchere(config, state.copy())
    completed = bettor.play(outcome)
    return Transition(bettor.state, completed)


def finalize(state: LabState, config: LabConfig) -> Transition:
    bettor = ReverseLabouchere(config, state.copy())
    completed = bettor.finalize()
    return Transition(bettor.state, completed)


# Scenario scripts

_SYMBOLS = {"W": Outcome.WIN, "T": Outcome.TIE, "L": Outcome.LOSS}
_GROUP = re.compile(r"\(([WTL]+)\)(?:\^|\*)?(\d+)")


def parse_outcome_script(text: str) -> list[Outcome]:
    """Parse W/T/L symbols; ``(WWL)^19`` repeats a group. ``#`` starts a comment."""
    outcomes: list[Outcome] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].upper().replace(" ", "").replace("\t", "")
        pos = 0
        while pos < len(line):
            group = _GROUP.match(line, pos)
            if group:
                outcomes.extend(_SYMBOLS[c] for c in group.group(1) * int(group.group(2)))
                pos = group.end()
            elif line[pos] in _SYMBOLS:
                outcomes.append(_SYMBOLS[line[pos]])
                pos += 1
            else:
                raise ScriptParseError(lineno, f"unexpected {line[pos]!r} at column {pos + 1}")
    return outcomes


@dataclass
class TraceRow:
    coup: int
    terms_before: tuple[int, ...]
    bet: int
    virtual: bool
    outcome: Outcome
    terms_after: tuple[int, ...]
    f_sys: int
    f_act: int


@dataclass
class ScenarioReport:
    trace: list[TraceRow] = field(default_factory=list)
    progressions: list[ProgressionOutcome] = field(default_factory=list)
    final_terms: tuple[int, ...] = ()
    total_staked: int = 0


def run_scenario(outcomes: list[Outcome], config: LabConfig | None = None) -> ScenarioReport:
    """Play a fixed outcome sequence on one chance, then close the open progression."""
    config = config or LabConfig()
    bettor = ReverseLabouchere(config)
    report = ScenarioReport()
    for i, outcome in enumerate(outcomes, start=1):
        before = tuple(bettor.state.terms)
        call = bettor.called_bet()
        completed = bettor.play(outcome)
        # On completion the bettor has already restarted; report the list it ended with.
        st = bettor.state
        after = completed.final_terms if completed else tuple(st.terms)
        f_sys = completed.amount_sys if completed else st.f_sys
        f_act = completed.amount_act if completed else st.f_act
        report.trace.append(TraceRow(i, before, call.amount, call.is_virtual, outcome, after, f_sys, f_act))
        if completed:
            report.progressions.append(completed)
    report.final_terms = tuple(bettor.state.terms)
    tail = bettor.finalize()
    if tail:
        report.progressions.append(tail)
    report.total_staked = bettor.total_staked
    return report


def load_outcome_script(path: str | Path) -> list[Outcome]:
    return parse_outcome_script(Path(path).read_text())
