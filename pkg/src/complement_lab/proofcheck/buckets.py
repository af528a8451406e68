"""Window decomposition of [0, N/2) into K half-open buckets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..complements import ComplementSet
from ..errors import IntegrityError, InvalidPartitionError, RangeError
from ..powers import PowerSet, bucket_counts_powers, bucket_counts_sorted


@dataclass
class BucketProfile:
    """h, g, A as 0-based arrays: ``h[k-1]`` is h(k)."""

    N: int
    K: int
    h: np.ndarray
    g: np.ndarray
    A: np.ndarray

    @property
    def sum_hg(self) -> int:
        return int(np.dot(self.h, self.g))


def bucket_profile(W: ComplementSet, ps: PowerSet, N: int, K: int) -> BucketProfile:
    if K < 1:
        raise InvalidPartitionError(f"K must be >= 1, got {K}")
    if N > W.limit or N > ps.limit:
        raise RangeError(f"N={N} exceeds a set limit")
    # only members below N/2 can land in a bucket
    h = bucket_counts_sorted(W.elements((N - 1) // 2), N, K)
    g = bucket_counts_powers(ps, N, K)
    return BucketProfile(N=N, K=K, h=h, g=g, A=np.cumsum(h))


@dataclass
class AbelCheck:
    direct: int  # sum_k h(k) g(k)
    rearranged: int  # A(K) g(K) + sum_{k<K} A(k) (g(k) - g(k+1))
    holds: bool


def abel_identity_check(bp: BucketProfile) -> AbelCheck:
    """Both sides of the summation-by-parts rearrangement, in exact integers."""
    h = [int(x) for x in bp.h]
    g = [int(x) for x in bp.g]
    A = [int(x) for x in bp.A]
    direct = sum(hk * gk for hk, gk in zip(h, g))
    rearranged = A[-1] * g[-1] + sum(A[k] * (g[k] - g[k + 1]) for k in range(bp.K - 1))
    if direct != rearranged:
        raise IntegrityError(f"Abel rearrangement mismatch: {direct} != {rearranged}")
    return AbelCheck(direct, rearranged, True)
