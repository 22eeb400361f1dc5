"""Shared test fixtures."""

from __future__ import annotations

import pytest

from casino_wager_lab.config import Config
from casino_wager_lab.rng import ScriptedStream


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale Monte Carlo tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def app_config(tmp_path, monkeypatch) -> Config:
    monkeypatch.setenv("WAGER_LAB_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("WAGER_LAB_OUT_DIR", str(tmp_path / "out"))
    monkeypatch.setenv("WAGER_LAB_WORKERS", "1")
    monkeypatch.setenv("WAGER_LAB_SEED", "1")
    return Config.from_env()


@pytest.fixture
def scripted():
    """Build a scripted stream from raw draws."""
    return ScriptedStream
