"""Exception hierarchy for Casino Wager Lab."""

from __future__ import annotations


class WagerLabError(Exception):
    """Root of all errors raised by this package."""


class DomainError(WagerLabError, ValueError):
    """An argument lies outside the domain of an operation."""


class AccumulatorOverflowError(WagerLabError, OverflowError):
    """A money accumulator left the signed 64-bit range."""


class ScriptExhaustedError(WagerLabError):
    """A scripted stream was asked for more values than it holds."""


class ScriptParseError(WagerLabError):
    """A scenario or scripted-input file could not be parsed."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
