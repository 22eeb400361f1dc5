"""Application configuration loaded from environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from platformdirs import user_cache_dir


@dataclass
class Config:
    """Configuration for Casino Wager Lab."""

    cache_dir: str = field(
        default_factory=lambda: os.environ.get(
            "WAGER_LAB_CACHE_DIR", user_cache_dir("casino-wager-lab")
        )
    )
    workers: int = field(
        default_factory=lambda: int(
            os.environ.get("WAGER_LAB_WORKERS", os.cpu_count() or 1)
        )
    )
    master_seed: int = field(
        default_factory=lambda: int(os.environ.get("WAGER_LAB_SEED", 1))
    )
    out_dir: str = field(
        default_factory=lambda: os.environ.get("WAGER_LAB_OUT_DIR", "results")
    )
    chunk_size: int = 1000  # replications per work item
    cache_ttl_seconds: int = 86400 * 7  # 7 days

    def __post_init__(self):
        Path(self.cache_dir).mkdir(parents=True, exist_ok=True)
        self.workers = max(1, self.workers)

    @classmethod
    def from_env(cls) -> Config:
        return cls()
