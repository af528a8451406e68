import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from complement_lab.complements import ComplementSet, greedy_complement, schedule_complement
from complement_lab.errors import FormatError, IntegrityError, RangeError
from complement_lab.powers import build_powers
from complement_lab.repcount import (
    _segment_dense,
    _segment_sparse,
    crosscheck_identity,
    dump_f,
    excess,
    load_f,
    quarter_circle_ratio,
    representation_counts,
)

from . import oracles

W04 = [0, 1, 2, 3, 4]


def profile(elements, N, r=2, n0=0, limit=None, **kw):
    W = ComplementSet.from_elements(elements, limit or N)
    return representation_counts(W, build_powers(r, N), N, n0=n0, **kw)


def test_worked_example():
    p = profile(W04, 16)
    assert p.f.tolist() == oracles.rep_counts(W04, 2, 16)
    assert p.f[4] == p.f[5] == 2 and p.f[14] == p.f[15] == 0
    assert p.total == 16
    assert p.uncovered.tolist() == [14, 15]
    assert excess(p) == (0, 2)


def test_single_generator():
    p = profile([0], 9)
    assert np.flatnonzero(p.f).tolist() == [1, 4, 9]
    assert p.total == 3 and p.raw_excess == -6


def test_two_generators():
    p = profile([0, 1], 5)
    assert p.f[1:].tolist() == [1, 1, 0, 1, 1] and p.total == 4


def test_n0_adjustment():
    p = profile([0], 9, n0=4)
    # uncovered above 4: 5, 6, 7, 8
    assert p.uncovered_count == 4
    assert p.adjusted_excess == 3 - (9 - 4 - 4)


def random_set(rng, N):
    i = np.arange(N + 1)
    prob = np.minimum(1.0, 2 / np.sqrt(np.maximum(i, 1)))
    return np.flatnonzero(rng.random(N + 1) < prob)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 2000), st.integers(2, 4))
def test_oracle_equivalence(seed, N, r):
    elems = random_set(np.random.default_rng(seed), N)
    p = profile(elems, N, r=r)
    assert p.f.tolist() == oracles.rep_counts(elems.tolist(), r, N)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 500), unique=True), st.integers(1, 500), st.integers(1, 500))
def test_sparse_and_dense_agree(elems, a, width):
    b = a + width
    mask = np.zeros(1001, dtype=bool)
    mask[elems] = True
    e = np.flatnonzero(mask).astype(np.int64)
    powers = build_powers(2, 1000).values
    assert np.array_equal(_segment_sparse(e, powers, a, b), _segment_dense(mask, powers, a, b))


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_worker_count_is_irrelevant(workers):
    W = greedy_complement(2, 20000)
    ps = build_powers(2, 20000)
    one = representation_counts(W, ps, 20000, workers=1)
    many = representation_counts(W, ps, 20000, workers=workers)
    assert one.f.tobytes() == many.f.tobytes()


def test_dense_set_path():
    N = 3000
    p = profile(np.arange(N + 1), N)
    assert p.f.tolist() == oracles.rep_counts(list(range(N + 1)), 2, N)


def test_identity_examples():
    W = ComplementSet.from_elements(W04, 16)
    chk = crosscheck_identity(W, build_powers(2, 16), 16)
    assert chk.lhs == chk.rhs == 16 == 5 + 5 + 5 + 1
    chk = crosscheck_identity(ComplementSet.from_elements([0], 9), build_powers(2, 9), 9)
    assert chk.lhs == chk.rhs == 3


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 3))
def test_identity_random(seed, r):
    N = 2000
    W = ComplementSet.from_elements(random_set(np.random.default_rng(seed), N), N)
    chk = crosscheck_identity(W, build_powers(r, N), N)
    assert chk.holds


def test_identity_detects_corruption():
    W = ComplementSet.from_elements(W04, 16)
    ps = build_powers(2, 16)
    prof = representation_counts(W, ps, 16)
    prof.f[3] += 1
    with pytest.raises(IntegrityError):
        crosscheck_identity(W, ps, 16, profile=prof)


def test_range_checks():
    W = ComplementSet.from_elements([0], 10)
    with pytest.raises(RangeError):
        representation_counts(W, build_powers(2, 20), 20)
    with pytest.raises(RangeError):
        representation_counts(ComplementSet.from_elements([0], 20), build_powers(2, 10), 20)


def test_f_dump_round_trip(tmp_path):
    p = representation_counts(schedule_complement(N=5000), build_powers(2, 5000), 5000)
    path = tmp_path / "f.acf"
    dump_f(p, path)
    N, r, f = load_f(path)
    assert (N, r) == (5000, 2) and np.array_equal(f, p.f)
    assert path.read_bytes()[:4] == b"ACF1" and path.stat().st_size == 20 + 8 * 5000
    path.write_bytes(path.read_bytes()[:-3])
    with pytest.raises(FormatError):
        load_f(path)


def test_quarter_circle_small():
    # N = 25: m = 1..4
    expected = 4 / (math.pi * 25) * sum(math.sqrt(25 - m * m) for m in range(1, 5))
    assert quarter_circle_ratio(25) == pytest.approx(expected, rel=1e-15)
