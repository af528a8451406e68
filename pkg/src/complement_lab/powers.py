"""r-th powers truncated at a limit, and their bucketed counts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapacityError,
    InvalidExponentError,
    InvalidPartitionError,
    InvalidParameterError,
    RangeError,
)

# Largest limit any set in the package may be built over. Bit arrays and count
# arrays are sized by the limit, so this is really a memory guard.
ADDRESS_BUDGET = 1 << 34

_INT64_MAX = (1 << 63) - 1


def iroot(x: int, r: int) -> int:
    """Return floor(x ** (1/r)) using only integer comparisons."""
    if x < 0:
        raise InvalidParameterError(f"iroot of negative value {x}")
    if r < 1:
        raise InvalidExponentError(f"exponent must be positive, got {r}")
    if x < 2 or r == 1:
        return x
    # floor(x^(1/r)) < 2^(bitlen/r + 1)
    lo, hi = 1, 1 << (x.bit_length() // r + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**r <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class PowerSet:
    """The r-th powers 1, 2^r, 3^r, ... not exceeding ``limit``."""

    r: int
    limit: int
    values: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def largest(self) -> int:
        return int(self.values[-1]) if len(self.values) else 0


def build_powers(r: int, limit: int, budget: int = ADDRESS_BUDGET) -> PowerSet:
    if r < 2:
        raise InvalidExponentError(f"exponent must be >= 2, got {r}")
    if limit < 0:
        raise InvalidParameterError(f"limit must be >= 0, got {limit}")
    if limit > budget or limit > _INT64_MAX:
        raise CapacityError(f"limit {limit} exceeds address budget {budget}")
    count = iroot(limit, r)
    values = np.arange(1, count + 1, dtype=np.int64) ** r
    values.flags.writeable = False
    return PowerSet(r=r, limit=limit, values=values)


def power_count(ps: PowerSet, x: int) -> int:
    """Number of m >= 1 with m**r <= x."""
    if not 0 <= x <= ps.limit:
        raise RangeError(f"x={x} outside [0, {ps.limit}]")
    return iroot(x, ps.r)


def bucket_indices(values: np.ndarray, N: int, K: int) -> np.ndarray:
    """0-based bucket index of each value, or -1 outside [0, N/2).

    Value v sits in bucket k (1-based) iff (k-1)*N <= 2*K*v < k*N, so the
    0-based index is floor(2*K*v / N). Everything is decided in integers.
    """
    if K < 1:
        raise InvalidPartitionError(f"K must be >= 1, got {K}")
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    values = np.asarray(values, dtype=np.int64)
    out = np.full(len(values), -1, dtype=np.int64)
    inside = (values >= 0) & (2 * values < N)
    v = values[inside]
    if K * N <= _INT64_MAX:
        out[inside] = (2 * K * v) // N
    else:
        out[inside] = np.array([(2 * K * int(x)) // N for x in v], dtype=np.int64)
    return out


def bucket_counts_sorted(values: np.ndarray, N: int, K: int) -> np.ndarray:
    """Counts per bucket for arbitrary nonnegative integer values."""
    idx = bucket_indices(values, N, K)
    return np.bincount(idx[idx >= 0], minlength=K).astype(np.int64)


def bucket_counts_powers(ps: PowerSet, N: int, K: int) -> np.ndarray:
    """g[k-1] = number of r-th powers in [(k-1)N/2K, kN/2K), k = 1..K."""
    if K < 1:
        raise InvalidPartitionError(f"K must be >= 1, got {K}")
    if N > ps.limit:
        raise RangeError(f"N={N} exceeds power set limit {ps.limit}")
    return bucket_counts_sorted(ps.values, N, K)


@dataclass
class GDeviationReport:
    N: int
    K: int
    observed: np.ndarray
    predicted: np.ndarray
    deviation: np.ndarray  # nan where the prediction is zero
    max_deviation: float
    flagged: list[int]  # 1-based buckets with zero prediction
    nonmonotone: list[int]  # 1-based k with g(k) < g(k+1)


def g_asymptotic_check(N: int, K: int, r: int = 2) -> GDeviationReport:
    """Compare bucketed square counts with sqrt(N/2K) * (sqrt(k) - sqrt(k-1)).

    Only a report: the formula holds up to a (1 + o(1)) factor.
    """
    if r != 2:
        raise InvalidExponentError("the bucket-count asymptotic is stated for squares only")
    if N < 1 or K < 1:
        raise InvalidParameterError("N and K must be >= 1")
    ps = build_powers(2, N)
    g = bucket_counts_powers(ps, N, K)
    k = np.arange(1, K + 1, dtype=np.float64)
    # sqrt(k) - sqrt(k-1) rewritten to avoid cancellation at large k
    predicted = math.sqrt(N / (2 * K)) / (np.sqrt(k) + np.sqrt(k - 1))
    deviation = np.full(K, np.nan)
    ok = predicted > 0
    deviation[ok] = np.abs(g[ok] / predicted[ok] - 1.0)
    flagged = [int(i) + 1 for i in np.flatnonzero(~ok)]
    nonmono = [int(i) + 1 for i in np.flatnonzero(g[:-1] < g[1:])]
    max_dev = float(np.nanmax(deviation)) if ok.any() else math.nan
    return GDeviationReport(N, K, g, predicted, deviation, max_dev, flagged, nonmono)
