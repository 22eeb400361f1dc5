"""Parquet store for per-replication experiment rows."""

from __future__ import annotations

import hashlib
import json
import logging
import time
from pathlib import Path

import pandas as pd
from pydantic import BaseModel, Field

from casino_wager_lab import __version__

logger = logging.getLogger(__name__)

INDEX_NAME = "cache_index.json"


class CacheEntry(BaseModel):
    experiment_id: str
    params: dict = Field(default_factory=dict)
    file: str
    created_at: float
    version: str
    rows: int
    size_bytes: int = 0


class CacheManager:
    """Session frames keyed by experiment id and parameters, with a JSON index.

    Entries written by another package version count as misses, since the
    simulation itself may have changed.
    """

    DEFAULT_TTL = 86400 * 7

    def __init__(self, cache_dir: str | Path, ttl: int | None = None) -> None:
        self.root = Path(cache_dir)
        self.root.mkdir(parents=True, exist_ok=True)
        self.ttl = ttl or self.DEFAULT_TTL
        self._entries = self._read_index()

    def _read_index(self) -> dict[str, CacheEntry]:
        path = self.root / INDEX_NAME
        if not path.exists():
            return {}
        raw = json.loads(path.read_text())
        return {key: CacheEntry.model_validate(value) for key, value in raw.items()}

    def _write_index(self) -> None:
        payload = {key: entry.model_dump() for key, entry in self._entries.items()}
        (self.root / INDEX_NAME).write_text(json.dumps(payload, indent=2))

    @staticmethod
    def _make_key(experiment_id: str, params: dict | None) -> str:
        canonical = json.dumps(params or {}, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(f"{experiment_id}:{canonical}".encode()).hexdigest()[:16]

    def _usable(self, entry: CacheEntry | None, ttl: int) -> bool:
        if entry is None:
            return False
        if entry.version != __version__:
            logger.info(f"Cached {entry.experiment_id} rows come from version {entry.version}")
            return False
        if time.time() - entry.created_at > ttl:
            logger.info(f"Cache expired for {entry.experiment_id}")
            return False
        return (self.root / entry.file).exists()

    def is_cached(self, experiment_id: str, params: dict | None = None) -> bool:
        return self._usable(self._entries.get(self._make_key(experiment_id, params)), self.ttl)

    def get_cached_df(self, experiment_id: str, params: dict | None = None, ttl: int | None = None) -> pd.DataFrame | None:
        """The stored frame, or None when missing, stale or from another version."""
        entry = self._entries.get(self._make_key(experiment_id, params))
        if not self._usable(entry, ttl or self.ttl):
            logger.info(f"Cache miss for {experiment_id}")
            return None
        frame = pd.read_parquet(self.root / entry.file)
        if len(frame) != entry.rows:
            logger.warning(f"Cached {experiment_id} file has {len(frame)} rows, index says {entry.rows}")
            return None
        logger.info(f"Cache hit for {experiment_id} ({entry.rows} rows)")
        return frame

    def cache_df(self, experiment_id: str, df: pd.DataFrame, params: dict | None = None) -> Path:
        key = self._make_key(experiment_id, params)
        path = self.root / f"{key}.parquet"
        df.to_parquet(path, index=False)
        self._entries[key] = CacheEntry(
            experiment_id=experiment_id,
            params=params or {},
            file=path.name,
            created_at=time.time(),
            version=__version__,
            rows=len(df),
            size_bytes=path.stat().st_size,
        )
        self._write_index()
        logger.info(f"Cached {len(df)} {experiment_id} rows at {path}")
        return path

    def list_cached(self) -> list[dict]:
        return [
            {**entry.model_dump(), "cache_key": key, "exists": (self.root / entry.file).exists()}
            for key, entry in self._entries.items()
        ]

    def clear(self, experiment_id: str | None = None) -> int:
        """Drop entries of one experiment, or all of them; returns how many went."""
        doomed = [k for k, e in self._entries.items() if experiment_id is None or e.experiment_id == experiment_id]
        for key in doomed:
            (self.root / self._entries.pop(key).file).unlink(missing_ok=True)
        self._write_index()
        return len(doomed)

    def stats(self) -> dict:
        size = sum(e.size_bytes for e in self._entries.values())
        return {
            "total_entries": len(self._entries),
            "total_size_bytes": size,
            "total_size_mb": round(size / 2**20, 2),
            "unique_experiments": len({e.experiment_id for e in self._entries.values()}),
            "total_rows": sum(e.rows for e in self._entries.values()),
            "cache_dir": str(self.root),
        }
