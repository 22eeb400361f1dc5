"""Streaming moments, Poisson tails and histograms."""

from casino_wager_lab.stats.histogram import Histogram
from casino_wager_lab.stats.moments import (
    StreamingMoments,
    moments_merge,
    moments_update,
    stderr_of_proportion,
)
from casino_wager_lab.stats.poisson import (
    poisson_ccdf,
    poisson_log_ccdf,
    poisson_log_pmf,
    poisson_pmf,
)

__all__ = [
    "Histogram",
    "StreamingMoments",
    "moments_merge",
    "moments_update",
    "poisson_ccdf",
    "poisson_log_ccdf",
    "poisson_log_pmf",
    "poisson_pmf",
    "stderr_of_proportion",
]
