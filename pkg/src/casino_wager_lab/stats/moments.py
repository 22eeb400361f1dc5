"""Streaming mean/variance with an exact parallel merge."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from casino_wager_lab.errors import DomainError


@dataclass(slots=True)
class StreamingMoments:
    """Count, mean and sum of squared deviations (Welford; Chan et al. for merges)."""

    n: int = 0
    mean: float = 0.0
    m2: float = 0.0

    def update(self, x: float) -> StreamingMoments:
        self.n += 1
        delta = x - self.mean
        self.mean += delta / self.n
        self.m2 += delta * (x - self.mean)
        return self

    def merge(self, other: StreamingMoments) -> StreamingMoments:
        if other.n == 0:
            return StreamingMoments(self.n, self.mean, self.m2)
        if self.n == 0:
            return StreamingMoments(other.n, other.mean, other.m2)
        n = self.n + other.n
        delta = other.mean - self.mean
        mean = self.mean + delta * other.n / n
        m2 = self.m2 + other.m2 + delta * delta * self.n * other.n / n
        return StreamingMoments(n, mean, m2)

    @classmethod
    def from_values(cls, values) -> StreamingMoments:
        arr = np.asarray(values, dtype=np.float64)
        if arr.size == 0:
            return cls()
        mean = float(arr.mean())
        return cls(n=int(arr.size), mean=mean, m2=float(np.sum((arr - mean) ** 2)))

    @property
    def variance(self) -> float:
        if self.n < 2:
            return 0.0
        return self.m2 / (self.n - 1)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)

    @property
    def stderr(self) -> float:
        """Standard error of the mean."""
        if self.n == 0:
            return 0.0
        return self.std / math.sqrt(self.n)


def moments_update(moments: StreamingMoments, x: float) -> StreamingMoments:
    return StreamingMoments(moments.n, moments.mean, moments.m2).update(x)


def moments_merge(a: StreamingMoments, b: StreamingMoments) -> StreamingMoments:
    return a.merge(b)


def stderr_of_proportion(count: int, n: int) -> float:
    """Standard error of an estimated proportion count/n."""
    if n < 1:
        raise DomainError(f"sample size must be positive, got {n}")
    if not 0 <= count <= n:
        raise DomainError(f"count {count} outside [0, {n}]")
    p = count / n
    return math.sqrt(p * (1 - p) / n)
