"""Poisson probabilities evaluated in log space."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln, logsumexp

from casino_wager_lab.errors import DomainError

# Terms are summed until they fall this far below the running total.
_RELATIVE_FLOOR = 1e-30
_LOG_FLOOR = math.log(_RELATIVE_FLOOR)
_BLOCK = 64


def _check(mu: float, n: int) -> None:
    if mu <= 0:
        raise DomainError(f"Poisson mean must be positive, got {mu}")
    if n < 0:
        raise DomainError(f"count must be nonnegative, got {n}")


def poisson_log_pmf(mu: float, n: int) -> float:
    _check(mu, n)
    return float(-mu + n * math.log(mu) - gammaln(n + 1))


def poisson_pmf(mu: float, n: int) -> float:
    return math.exp(poisson_log_pmf(mu, n))


def poisson_log_ccdf(mu: float, n: int) -> float:
    """log P(N >= n) for N ~ Poisson(mu)."""
    _check(mu, n)
    if n == 0:
        return 0.0
    log_mu = math.log(mu)
    total = -math.inf
    start = n
    while True:
        k = np.arange(start, start + _BLOCK, dtype=np.float64)
        terms = -mu + k * log_mu - gammaln(k + 1)
        total = float(logsumexp(np.append(terms, total)))
        # Past the mode the terms decrease, so the last one bounds the rest.
        if k[-1] >= mu and terms[-1] - total < _LOG_FLOOR:
            return min(total, 0.0)
        start += _BLOCK


def poisson_ccdf(mu: float, n: int) -> float:
    """P(N >= n) for N ~ Poisson(mu); exactly 1.0 at n = 0."""
    if n == 0:
        _check(mu, n)
        return 1.0
    return math.exp(poisson_log_ccdf(mu, n))
