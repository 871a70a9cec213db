"""Structural formulas: minimum dataset length, ramp period, capacities."""

import pytest

from pacsim import (
    ConfigError,
    ceil_log2,
    drain_residency_bound,
    fifo_capacity,
    min_dataset_length,
    ramp_cycles,
)


def test_ceil_log2():
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5, 8, 13, 14, 16)] == [0, 1, 2, 2, 3, 3, 4, 4, 4]


def test_min_length_published_column():
    # p=14 reproduces the published 74/25/11/5 column.
    assert min_dataset_length(14, 1) == 74
    assert min_dataset_length(14, 2) == 25
    assert min_dataset_length(14, 3) == 11
    assert min_dataset_length(14, 4) == 5


def test_min_length_direct_evaluation():
    # (1 + ceil(log2 3)) * 3 + 4 = 13 over 2^1 - 1
    assert min_dataset_length(3, 1) == 13


def test_min_length_clamp():
    # ceil(8 / 255) = 1; the floor of 4 dominates.
    assert min_dataset_length(2, 8) == 4


def test_min_length_formula_general():
    for p in (1, 2, 3, 5, 14, 31):
        for width in (1, 2, 3, 4, 8):
            numerator = (1 + ceil_log2(p)) * p + 4
            expected = max(-(-numerator // (2**width - 1)), 4)
            assert min_dataset_length(p, width) == expected


def test_min_length_rejects_bad_args():
    with pytest.raises(ConfigError):
        min_dataset_length(0, 1)
    with pytest.raises(ConfigError):
        min_dataset_length(3, 0)


def test_ramp_cycles():
    assert ramp_cycles(3) == 6
    assert ramp_cycles(14) == 18
    # Formula value for p=1: 1 + 3 + (1 - 1) = 4, confirmed by simulation
    # (see test_jugglepac.test_first_subsum_issue_matches_ramp).
    assert ramp_cycles(1) == 4
    assert ramp_cycles(2) == 6
    assert ramp_cycles(5) == 8


def test_drain_residency_bound():
    assert drain_residency_bound(14) == 74
    assert drain_residency_bound(3) == 13
    assert drain_residency_bound(1) == 5


def test_fifo_capacity():
    assert fifo_capacity(14) == 4
    assert fifo_capacity(3) == 2
    assert fifo_capacity(2) == 1
    # One physical slot even though ceil(log2 1) = 0: odd-length tails at
    # p=1 buffer one pair for one cycle.
    assert fifo_capacity(1) == 1
