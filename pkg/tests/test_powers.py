import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from complement_lab.errors import CapacityError, InvalidExponentError, InvalidPartitionError, RangeError
from complement_lab.powers import (
    ADDRESS_BUDGET,
    bucket_counts_powers,
    build_powers,
    g_asymptotic_check,
    iroot,
    power_count,
)

from . import oracles


@pytest.mark.parametrize(
    "r, limit, expected",
    [(2, 20, [1, 4, 9, 16]), (3, 30, [1, 8, 27]), (2, 0, [])],
)
def test_build_powers_examples(r, limit, expected):
    assert build_powers(r, limit).values.tolist() == expected


def test_build_powers_errors():
    with pytest.raises(InvalidExponentError):
        build_powers(1, 10)
    with pytest.raises(CapacityError):
        build_powers(2, ADDRESS_BUDGET + 1)


@pytest.mark.parametrize("r, x, expected", [(2, 16, 4), (2, 15, 3), (3, 27, 3)])
def test_power_count_examples(r, x, expected):
    assert power_count(build_powers(r, 100), x) == expected


def test_power_count_range():
    with pytest.raises(RangeError):
        power_count(build_powers(2, 10), 11)


@given(st.integers(0, 2**62), st.integers(2, 7))
def test_iroot_is_floor_root(x, r):
    m = iroot(x, r)
    assert m**r <= x < (m + 1) ** r


@pytest.mark.parametrize("m", [10**6 - 1, 10**6, 3037000499])
def test_iroot_near_perfect_squares(m):
    assert iroot(m * m, 2) == m
    assert iroot(m * m - 1, 2) == m - 1


@given(st.integers(0, 5000), st.integers(2, 4))
def test_values_match_naive(limit, r):
    ps = build_powers(r, limit)
    assert ps.values.tolist() == oracles.powers_upto(r, limit)
    assert len(ps) == iroot(limit, r)


@pytest.mark.parametrize(
    "N, K, expected",
    [(16, 2, [1, 1]), (100, 5, [3, 1, 1, 1, 1]), (16, 1, [2])],
)
def test_bucket_counts_examples(N, K, expected):
    assert bucket_counts_powers(build_powers(2, N), N, K).tolist() == expected
    assert oracles.bucket_counts(oracles.powers_upto(2, N), N, K) == expected


def test_bucket_counts_zero_partition():
    with pytest.raises(InvalidPartitionError):
        bucket_counts_powers(build_powers(2, 16), 16, 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 1000), st.integers(2, 3))
def test_bucket_counts_match_naive_loop(N, K, r):
    ps = build_powers(r, N)
    g = bucket_counts_powers(ps, N, K)
    naive = np.zeros(K, dtype=np.int64)
    m = 1
    while 2 * m**r < N:
        naive[(2 * K * m**r) // N] += 1
        m += 1
    assert np.array_equal(g, naive)
    # partition property: everything below N/2 is counted once
    assert g.sum() == sum(1 for v in ps.values.tolist() if 2 * K * v < K * N)


def test_g_asymptotic_small():
    rep = g_asymptotic_check(16, 1)
    assert rep.observed.tolist() == [2]
    assert rep.predicted[0] == pytest.approx(math.sqrt(8))
    assert rep.max_deviation == pytest.approx(1 - 2 / math.sqrt(8), abs=1e-12)


def test_g_asymptotic_report_shape():
    rep = g_asymptotic_check(10**4, 4)
    assert len(rep.deviation) == 4 and rep.flagged == []
    assert rep.max_deviation == np.nanmax(rep.deviation)


def test_g_asymptotic_squares_only():
    with pytest.raises(InvalidExponentError):
        g_asymptotic_check(100, 2, r=3)
