"""Tests for decompforge.core.rng and decompforge.core.retry"""

import pytest

from decompforge.core.errors import Failure, StageFailure
from decompforge.core.retry import run_with_retries
from decompforge.core.rng import derive_rng, derive_seed, stage_code


def test_streams_are_reproducible():
    a = derive_rng(7, "nibble", 3).integers(0, 1 << 30, size=5)
    b = derive_rng(7, "nibble", 3).integers(0, 1 << 30, size=5)
    c = derive_rng(7, "nibble", 4).integers(0, 1 << 30, size=5)
    assert list(a) == list(b)
    assert list(a) != list(c)


def test_derive_seed_is_stable():
    assert derive_seed(1, "stage", 0) == derive_seed(1, "stage", 0)
    assert derive_seed(1, "stage", 0) != derive_seed(1, "stage", 1)
    assert stage_code("template") == stage_code("template")


def test_retry_returns_first_success():
    calls = []

    def fn(seed, attempt):
        calls.append(attempt)
        if attempt < 2:
            raise StageFailure.at("nibble", "stalled")
        return seed

    result = run_with_retries(fn, attempts=5, seed=3, stage="pipeline")
    assert calls == [0, 1, 2]
    assert result == derive_seed(3, "pipeline", 2)


def test_retry_gives_up_with_failure():
    def fn(seed, attempt):
        raise StageFailure.at("cover_leave", "no legal triangle", witness=(0, 1), uncovered=1)

    result = run_with_retries(fn, attempts=3, seed=0, stage="pipeline")
    assert isinstance(result, Failure)
    assert result.stage == "cover_leave"
    assert result.diagnostics == {"uncovered": 1, "attempts": 3}
    assert result.to_dict()["witness"] == [0, 1]


def test_retry_propagates_hard_errors():
    def fn(seed, attempt):
        raise KeyError("bug")

    with pytest.raises(KeyError):
        run_with_retries(fn, attempts=3, seed=0, stage="pipeline")
