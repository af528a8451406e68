"""Same-bucket difference classes d = w - m^r and their sizes l_d."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._parallel import resolve_workers, run_tasks, split_range
from ..complements import ComplementSet
from ..errors import IntegrityError, InvalidPartitionError, RangeError
from ..powers import PowerSet, bucket_indices


@dataclass
class CollisionPairs:
    """Every same-bucket pair (w, p), sorted by (d, p)."""

    d: np.ndarray
    w: np.ndarray
    p: np.ndarray


@dataclass
class CollisionHistogram:
    N: int
    K: int
    d: np.ndarray = field(repr=False)  # ascending distinct differences
    ell: np.ndarray = field(repr=False)  # class sizes, aligned with d
    distinct_d: int
    pair_total: int
    multi_total: int
    binom_sum: int
    square_sum: int  # sum of l_d^2 over classes with l_d >= 2

    @property
    def classes(self) -> dict[int, int]:
        return dict(zip(self.d.tolist(), self.ell.tolist()))


def _split_by_bucket(W: ComplementSet, ps: PowerSet, N: int, K: int):
    if K < 1:
        raise InvalidPartitionError(f"K must be >= 1, got {K}")
    if N > W.limit or N > ps.limit:
        raise RangeError(f"N={N} exceeds a set limit")
    w = W.elements((N - 1) // 2)
    p = ps.values[2 * ps.values < N]
    # elements are sorted, so bucket boundaries are offsets into each array
    wb = np.searchsorted(bucket_indices(w, N, K), np.arange(K + 1))
    pb = np.searchsorted(bucket_indices(p, N, K), np.arange(K + 1))
    return w, p, wb, pb


def _bucket_pairs(w, p, wb, pb, k_lo: int, k_hi: int, with_members: bool):
    ds, ws, ps_ = [], [], []
    for k in range(k_lo, k_hi):
        wk = w[wb[k] : wb[k + 1]]
        pk = p[pb[k] : pb[k + 1]]
        if len(wk) == 0 or len(pk) == 0:
            continue
        ds.append((wk[:, None] - pk[None, :]).ravel())
        if with_members:
            ws.append(np.repeat(wk, len(pk)))
            ps_.append(np.tile(pk, len(wk)))
    empty = np.zeros(0, dtype=np.int64)
    cat = lambda xs: np.concatenate(xs) if xs else empty  # noqa: E731
    return cat(ds), cat(ws), cat(ps_)


def _collect(W, ps, N, K, workers, with_members):
    w, p, wb, pb = _split_by_bucket(W, ps, N, K)
    workers = resolve_workers(workers)
    chunks = run_tasks(
        lambda a, b: _bucket_pairs(w, p, wb, pb, a, b, with_members),
        split_range(0, K, workers),
        workers,
    )
    return tuple(np.concatenate([c[i] for c in chunks]) for i in range(3))


def _histogram(d: np.ndarray, N: int, K: int) -> CollisionHistogram:
    keys, ell = np.unique(d, return_counts=True)
    ell = ell.astype(np.int64)
    if keys.size and (2 * K * np.abs(keys).max() >= N):
        raise IntegrityError("difference outside the open window (-N/2K, N/2K)")
    multi = ell[ell >= 2]
    return CollisionHistogram(
        N=N,
        K=K,
        d=keys,
        ell=ell,
        distinct_d=len(keys),
        pair_total=int(ell.sum()),
        multi_total=int(multi.sum()),
        binom_sum=int((multi * (multi - 1) // 2).sum()),
        square_sum=int((multi * multi).sum()),
    )


def collision_histogram(
    W: ComplementSet, ps: PowerSet, N: int, K: int, workers: int | None = None
) -> CollisionHistogram:
    """Map d -> l_d over pairs (w, m^r) sharing a bucket, with summary sums."""
    d, _, _ = _collect(W, ps, N, K, workers, with_members=False)
    return _histogram(d, N, K)


def histogram_from_pairs(pairs: CollisionPairs, N: int, K: int) -> CollisionHistogram:
    return _histogram(pairs.d, N, K)


def collision_pairs(W: ComplementSet, ps: PowerSet, N: int, K: int, workers: int | None = None) -> CollisionPairs:
    d, w, p = _collect(W, ps, N, K, workers, with_members=True)
    order = np.lexsort((p, d))
    return CollisionPairs(d=d[order], w=w[order], p=p[order])


@dataclass
class WitnessCheck:
    classes_checked: int
    pairs_checked: int
    failures: int


def verify_cross_representations(
    pairs: CollisionPairs, N: int, f: np.ndarray | None = None, max_classes: int | None = None, seed: int = 0
) -> WitnessCheck:
    """For each class with l_d >= 2 and all i != j: w_i + p_j == w_j + p_i < N.

    If ``f`` is given, also check that this common value has f >= 2, since
    (w_i, p_j) and (w_j, p_i) are two distinct representations of it.
    With ``max_classes`` set, a seeded random sample of classes is checked.
    """
    if pairs.d.size == 0:
        return WitnessCheck(0, 0, 0)
    starts = np.flatnonzero(np.r_[True, pairs.d[1:] != pairs.d[:-1]])
    ends = np.r_[starts[1:], len(pairs.d)]
    multi = np.flatnonzero(ends - starts >= 2)
    if max_classes is not None and len(multi) > max_classes:
        rng = np.random.default_rng(seed)
        multi = np.sort(rng.choice(multi, size=max_classes, replace=False))
    checked = failures = 0
    for c in multi:
        s, e = starts[c], ends[c]
        w, p = pairs.w[s:e], pairs.p[s:e]
        cross = w[:, None] + p[None, :]  # cross[i, j] = w_i + p_j
        off = ~np.eye(len(w), dtype=bool)
        ok = (cross == cross.T) & (cross < N)
        if f is not None:
            ok &= f[np.minimum(cross, N)] >= 2
        checked += int(off.sum())
        failures += int((off & ~ok).sum())
    return WitnessCheck(len(multi), checked, failures)
