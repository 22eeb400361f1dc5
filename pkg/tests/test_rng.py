"""Tests for deterministic random streams."""

from __future__ import annotations

import math
from collections import Counter

import pytest

from casino_wager_lab.errors import DomainError, ScriptExhaustedError, ScriptParseError
from casino_wager_lab.rng import (
    ScriptedStream,
    StreamKey,
    derive_stream,
    load_script_numbers,
    next_below,
    purpose_id,
)


def _draws(stream, n, count=100):
    return [stream.next_below(n) for _ in range(count)]


def test_same_key_same_stream():
    assert _draws(derive_stream(42, 0), 37) == _draws(derive_stream(42, 0), 37)


def test_different_ids_differ():
    assert _draws(derive_stream(42, 0), 37) != _draws(derive_stream(42, 1), 37)


def test_stream_does_not_depend_on_other_streams():
    reference = _draws(derive_stream(42, 7), 37)
    for r in range(7):
        _draws(derive_stream(42, r), 37)
    assert _draws(derive_stream(42, 7), 37) == reference


def test_interleaved_moduli_are_reproducible():
    def mixed(stream):
        return [(stream.next_below(37), stream.next_below(6)) for _ in range(50)]

    assert mixed(derive_stream(3, 3)) == mixed(derive_stream(3, 3))


@pytest.mark.parametrize("n", [1, 6, 37, 52])
def test_next_below_range(n):
    values = _draws(derive_stream(1, 0), n, 2000)
    assert all(0 <= v < n for v in values)
    if n == 1:
        assert set(values) == {0}


def test_next_below_rejects_zero():
    with pytest.raises(DomainError):
        next_below(derive_stream(1, 0), 0)


def test_pocket_frequencies():
    draws = 370_000
    counts = Counter(derive_stream(2024, 0).integers(37, draws).tolist())
    p = 1 / 37
    se = math.sqrt(p * (1 - p) / draws)
    for pocket in range(37):
        assert abs(counts[pocket] / draws - p) < 5 * se


@pytest.mark.parametrize("seed,stream_id", [(-1, 0), (0, 2**64)])
def test_stream_key_is_64_bit(seed, stream_id):
    with pytest.raises(DomainError):
        StreamKey(seed, stream_id)


def test_purpose_id_is_stable_and_distinct():
    assert purpose_id("roulette") == purpose_id("roulette")
    assert purpose_id("roulette") != purpose_id("craps")
    assert 0 <= purpose_id("tcp") < 2**64


class TestScriptedStream:
    def test_replays_values(self):
        stream = ScriptedStream([3, 0, 36])
        assert [stream.next_below(37) for _ in range(3)] == [3, 0, 36]
        assert stream.remaining == 0

    def test_exhaustion(self):
        stream = ScriptedStream([1])
        stream.next_below(37)
        with pytest.raises(ScriptExhaustedError):
            stream.next_below(37)

    def test_value_out_of_range(self):
        with pytest.raises(DomainError):
            ScriptedStream([37]).next_below(37)

    @pytest.mark.parametrize("total", range(2, 13))
    def test_dice_totals(self, total):
        stream = ScriptedStream.from_totals([total])
        assert stream.next_below(6) + stream.next_below(6) + 2 == total

    def test_bad_total(self):
        with pytest.raises(DomainError):
            ScriptedStream.from_totals([13])


def test_load_script_numbers(tmp_path):
    path = tmp_path / "spins.txt"
    path.write_text("0 15  # zero then fifteen\n36\n")
    assert load_script_numbers(path) == [0, 15, 36]


def test_load_script_numbers_reports_line(tmp_path):
    path = tmp_path / "spins.txt"
    path.write_text("0 15\n3 x\n")
    with pytest.raises(ScriptParseError) as excinfo:
        load_script_numbers(path)
    assert excinfo.value.line == 2
    assert str(excinfo.value).startswith("line 2:")
