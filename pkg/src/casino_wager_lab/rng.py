"""Deterministic, splittable random streams.

Every stream is derived from a ``(master_seed, stream_id)`` pair through
numpy's ``SeedSequence`` spawn keys, so replication ``r`` of an experiment
sees the same numbers whichever worker runs it.
"""

from __future__ import annotations

import hashlib
import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

from casino_wager_lab.errors import DomainError, ScriptExhaustedError, ScriptParseError

UINT64_LIMIT = 2**64


class RandomSource(Protocol):
    """Anything the game engines can draw uniform integers from."""

    def next_below(self, n: int) -> int: ...


@dataclass(frozen=True)
class StreamKey:
    master_seed: int
    stream_id: int

    def __post_init__(self) -> None:
        for name, value in (("master_seed", self.master_seed), ("stream_id", self.stream_id)):
            if not 0 <= value < UINT64_LIMIT:
                raise DomainError(f"{name} must be a 64-bit unsigned integer, got {value}")


class Stream:
    """A PCG64 stream that hands out unbiased integers below ``n``.

    Draws are taken in blocks per modulus; numpy's bounded integer sampler
    is rejection based, so there is no modulo bias.
    """

    BLOCK_SIZE = 4096

    def __init__(self, key: StreamKey) -> None:
        self.key = key
        seq = np.random.SeedSequence(entropy=key.master_seed, spawn_key=(key.stream_id,))
        self._generator = np.random.Generator(np.random.PCG64(seq))
        self._buffers: dict[int, list[int]] = {}

    def next_below(self, n: int) -> int:
        buf = self._buffers.get(n)
        if not buf:
            if n < 1:
                raise DomainError(f"upper bound must be positive, got {n}")
            buf = self._generator.integers(0, n, size=self.BLOCK_SIZE).tolist()
            buf.reverse()
            self._buffers[n] = buf
        return buf.pop()

    def integers(self, n: int, size: int) -> np.ndarray:
        """A block of draws in [0, n), independent of the buffered draws."""
        if n < 1:
            raise DomainError(f"upper bound must be positive, got {n}")
        return self._generator.integers(0, n, size=size)


def derive_stream(master_seed: int, stream_id: int) -> Stream:
    return Stream(StreamKey(master_seed, stream_id))


def purpose_id(name: str) -> int:
    """Stable 64-bit stream id for a named purpose such as ``"roulette"``."""
    digest = hashlib.blake2b(name.encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def next_below(stream: RandomSource, n: int) -> int:
    if n < 1:
        raise DomainError(f"upper bound must be positive, got {n}")
    return stream.next_below(n)


class ScriptedStream:
    """Replays a fixed list of values, for deterministic scenarios and tests."""

    def __init__(self, values: Iterable[int]) -> None:
        self._values = list(values)
        self._pos = 0

    def next_below(self, n: int) -> int:
        if n < 1:
            raise DomainError(f"upper bound must be positive, got {n}")
        if self._pos >= len(self._values):
            raise ScriptExhaustedError(f"script exhausted after {self._pos} values")
        value = self._values[self._pos]
        if not 0 <= value < n:
            raise DomainError(f"scripted value {value} at position {self._pos} not in [0, {n})")
        self._pos += 1
        return value

    @property
    def remaining(self) -> int:
        return len(self._values) - self._pos

    @classmethod
    def from_totals(cls, totals: Iterable[int]) -> ScriptedStream:
        """Script dice rolls by their totals; each total becomes a pair of die faces."""
        faces: list[int] = []
        for total in totals:
            if not 2 <= total <= 12:
                raise DomainError(f"dice total must be in 2..12, got {total}")
            first = min(6, total - 1)
            faces.extend((first - 1, total - first - 1))
        return cls(faces)


def load_script_numbers(path: str | Path) -> list[int]:
    """Read whitespace-separated integers from a text file; ``#`` starts a comment."""
    numbers: list[int] = []
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            for token in line.split("#", 1)[0].split():
                if not re.fullmatch(r"\d+", token):
                    raise ScriptParseError(lineno, f"expected a nonnegative integer, got {token!r}")
                numbers.append(int(token))
    return numbers
