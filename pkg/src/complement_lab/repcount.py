"""Representation function f(n) = #{(w, m^r) : w + m^r = n} for n <= N."""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._parallel import resolve_workers, run_tasks, split_range
from .complements import ComplementSet
from .errors import CapacityError, FormatError, IntegrityError, InvalidParameterError, RangeError
from .powers import PowerSet

F_MAGIC = b"ACF1"
_INT64_MAX = (1 << 63) - 1
# pairs gathered per bincount flush in the sparse path
_BATCH_PAIRS = 1 << 22


@dataclass
class RepProfile:
    N: int
    r: int
    n0: int
    f: np.ndarray = field(repr=False)  # length N + 1, f[0] == 0, f[n] for 1 <= n <= N
    total: int
    uncovered: np.ndarray = field(repr=False)  # uncovered n in (n0, N]
    uncovered_count: int
    raw_excess: int
    adjusted_excess: int


def _check_inputs(W: ComplementSet, ps: PowerSet, N: int) -> None:
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    if N > W.limit:
        raise RangeError(f"N={N} exceeds complement limit {W.limit}")
    if N > ps.limit:
        raise RangeError(f"N={N} exceeds power set limit {ps.limit}")


def _segment_sparse(elems: np.ndarray, powers: np.ndarray, a: int, b: int) -> np.ndarray:
    """f over [a, b) by scattering every pair sum w + p landing there."""
    seg = np.zeros(b - a, dtype=np.int64)
    powers = powers[powers < b]
    lo = np.searchsorted(elems, a - powers, side="left")
    hi = np.searchsorted(elems, b - powers, side="left")
    counts = hi - lo
    start = 0
    cum = np.cumsum(counts)
    while start < len(powers):
        base = cum[start - 1] if start else 0
        stop = int(np.searchsorted(cum, base + _BATCH_PAIRS, side="right"))
        stop = max(stop, start + 1)
        c = counts[start:stop]
        total = int(c.sum())
        if total:
            # ragged gather: positions lo[i] .. hi[i]-1 for each power i
            offsets = np.repeat(lo[start:stop] - (np.cumsum(c) - c), c)
            idx = np.arange(total, dtype=np.int64) + offsets
            sums = elems[idx] + np.repeat(powers[start:stop], c) - a
            seg += np.bincount(sums, minlength=b - a)
        start = stop
    return seg


def _segment_dense(mask: np.ndarray, powers: np.ndarray, a: int, b: int) -> np.ndarray:
    """f over [a, b) by adding the membership indicator shifted by each power."""
    seg = np.zeros(b - a, dtype=np.int64)
    for p in powers[powers < b].tolist():
        lo = max(a, p)
        seg[lo - a :] += mask[lo - p : b - p]
    return seg


def representation_counts(
    W: ComplementSet, ps: PowerSet, N: int, n0: int = 0, workers: int | None = None
) -> RepProfile:
    """Exact f(n) for 1 <= n <= N plus totals, gaps and excess.

    The n-range is split into one contiguous segment per worker; each segment
    is computed independently, so the result does not depend on the worker
    count. Per segment the cheaper of two exact strategies is used: scattering
    the (w, m^r) pairs (cost ~ number of pairs) or adding shifted membership
    slices (cost ~ #powers * segment length).
    """
    _check_inputs(W, ps, N)
    if not 0 <= n0 <= N:
        raise InvalidParameterError(f"n0 must lie in [0, N], got {n0}")
    powers = ps.values[ps.values <= N]
    if len(powers) and N * len(powers) > _INT64_MAX:
        raise CapacityError("representation totals could overflow 64-bit counters")
    workers = resolve_workers(workers)
    mask = W.mask(N)
    elems = np.flatnonzero(mask).astype(np.int64)

    # number of pairs with sum <= N, i.e. the total, known before counting
    n_pairs = int(np.searchsorted(elems, N - powers, side="right").sum())
    sparse = 4 * n_pairs < len(powers) * N

    def segment(a: int, b: int) -> np.ndarray:
        if sparse:
            return _segment_sparse(elems, powers, a, b)
        return _segment_dense(mask, powers, a, b)

    parts = run_tasks(segment, split_range(1, N + 1, workers), workers)
    f = np.zeros(N + 1, dtype=np.int64)
    f[1:] = np.concatenate(parts)
    total = int(f.sum())
    if total != n_pairs:
        raise IntegrityError(f"pair count {n_pairs} != sum of f {total}")

    uncovered = np.flatnonzero(f[n0 + 1 :] == 0) + (n0 + 1)
    unc = len(uncovered)
    return RepProfile(
        N=N,
        r=ps.r,
        n0=n0,
        f=f,
        total=total,
        uncovered=uncovered,
        uncovered_count=unc,
        raw_excess=total - N,
        adjusted_excess=total - (N - n0 - unc),
    )


def excess(profile: RepProfile) -> tuple[int, int]:
    """(raw, adjusted): raw is total - N; adjusted forgives n <= n0 and
    counts every uncovered n > n0 as a missing representation."""
    return profile.raw_excess, profile.adjusted_excess


@dataclass
class IdentityCheck:
    lhs: int  # sum of f(n), n <= N
    rhs: int  # sum over powers p <= N of W(N - p)
    holds: bool


def crosscheck_identity(
    W: ComplementSet, ps: PowerSet, N: int, profile: RepProfile | None = None, workers: int | None = None
) -> IdentityCheck:
    """sum_{n<=N} f(n) == sum_{m^r <= N} W(N - m^r), computed by two routes.

    Raises IntegrityError on mismatch.
    """
    _check_inputs(W, ps, N)
    if profile is None:
        profile = representation_counts(W, ps, N, workers=workers)
    elif profile.N != N:
        raise InvalidParameterError("profile was computed for a different N")
    lhs = int(profile.f[1 : N + 1].sum())
    powers = ps.values[ps.values <= N]
    rhs = int(W.count_many(N - powers).sum())
    if lhs != rhs:
        raise IntegrityError(f"sum f(n) = {lhs} but sum W(N - m^r) = {rhs}")
    return IdentityCheck(lhs, rhs, True)


def quarter_circle_ratio(N: int) -> float:
    """(4 / (pi N)) * sum_{1 <= m, m^2 < N} sqrt(N - m^2); tends to 1."""
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    m = np.arange(1, math.isqrt(N - 1) + 1, dtype=np.float64)
    return 4.0 / (math.pi * N) * math.fsum(np.sqrt(N - m * m))


def dump_f(profile: RepProfile, path) -> None:
    with Path(path).open("wb") as fh:
        fh.write(F_MAGIC)
        fh.write(struct.pack("<QQ", profile.N, profile.r))
        fh.write(profile.f[1:].astype("<u8").tobytes())


def load_f(path) -> tuple[int, int, np.ndarray]:
    """Read an f dump; returns (N, r, f) with f indexed like RepProfile.f."""
    data = Path(path).read_bytes()
    if len(data) < 20 or data[:4] != F_MAGIC:
        raise FormatError(f"{path}: bad magic or truncated header")
    N, r = struct.unpack_from("<QQ", data, 4)
    if len(data) != 20 + 8 * N:
        raise FormatError(f"{path}: expected {N} counts")
    f = np.zeros(N + 1, dtype=np.int64)
    f[1:] = np.frombuffer(data, dtype="<u8", offset=20).astype(np.int64)
    return N, r, f
