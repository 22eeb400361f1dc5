"""Fixed-width histograms with mergeable integer counts."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import pandas as pd


@dataclass
class Histogram:
    bin_width: float = 1.0
    origin: float = 0.0
    counts: Counter = field(default_factory=Counter)

    def bin_index(self, x: float) -> int:
        return math.floor((x - self.origin) / self.bin_width)

    def add(self, x: float) -> None:
        self.counts[self.bin_index(x)] += 1

    def add_many(self, values) -> None:
        for x in values:
            self.counts[self.bin_index(float(x))] += 1

    def merge(self, other: Histogram) -> Histogram:
        if (self.bin_width, self.origin) != (other.bin_width, other.origin):
            raise ValueError("cannot merge histograms with different binning")
        return Histogram(self.bin_width, self.origin, self.counts + other.counts)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_frame(self) -> pd.DataFrame:
        """One row per bin between the lowest and highest occupied bins."""
        if not self.counts:
            return pd.DataFrame(columns=["bin_low", "bin_high", "count"])
        lo, hi = min(self.counts), max(self.counts)
        rows = [
            {
                "bin_low": self.origin + i * self.bin_width,
                "bin_high": self.origin + (i + 1) * self.bin_width,
                "count": self.counts.get(i, 0),
            }
            for i in range(lo, hi + 1)
        ]
        return pd.DataFrame(rows)
