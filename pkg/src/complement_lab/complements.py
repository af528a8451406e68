"""Candidate additive complements W: construction, storage, counting.

Membership is defined on [0, limit]. The counting function W(x) counts
elements w <= x *including* w = 0, on both sides of every identity that uses
it.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CapacityError, FormatError, InvalidParameterError, RangeError
from .powers import ADDRESS_BUDGET, PowerSet, build_powers, iroot

BINARY_MAGIC = b"ACW1"
_GREEDY_SCAN = 4096


@dataclass(frozen=True, eq=False)
class ComplementSet:
    """Finite set W within [0, limit] stored as a packed bit array.

    ``bits`` holds bit i (least significant first within each byte) for
    i in W. ``rank[j]`` is the number of members among the first 64*j
    positions, so W(x) is one lookup plus a single-word popcount.
    """

    limit: int
    bits: np.ndarray = field(repr=False)
    rank: np.ndarray = field(repr=False)
    _words: np.ndarray = field(repr=False)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> ComplementSet:
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 1 or len(mask) == 0:
            raise InvalidParameterError("mask must be a non-empty 1-d array")
        limit = len(mask) - 1
        return cls.from_bits(np.packbits(mask, bitorder="little"), limit)

    @classmethod
    def from_elements(cls, elements, limit: int) -> ComplementSet:
        _check_limit(limit)
        elements = np.asarray(elements, dtype=np.int64)
        if elements.size and (elements.min() < 0 or elements.max() > limit):
            raise RangeError(f"elements must lie in [0, {limit}]")
        mask = np.zeros(limit + 1, dtype=bool)
        mask[elements] = True
        return cls.from_mask(mask)

    @classmethod
    def from_bits(cls, bits: np.ndarray, limit: int) -> ComplementSet:
        _check_limit(limit)
        nbytes = (limit + 8) // 8
        bits = np.array(bits, dtype=np.uint8)
        if len(bits) != nbytes:
            raise FormatError(f"expected {nbytes} bytes of bits for limit {limit}, got {len(bits)}")
        # bits above the limit in the final byte are not members
        tail = (limit + 1) % 8
        if tail:
            bits[-1] &= np.uint8((1 << tail) - 1)
        padded = np.zeros(-(-nbytes // 8) * 8, dtype=np.uint8)
        padded[:nbytes] = bits
        words = padded.view("<u8")
        rank = np.zeros(len(words) + 1, dtype=np.int64)
        np.cumsum(np.bitwise_count(words), out=rank[1:])
        bits.flags.writeable = False
        words.flags.writeable = False
        rank.flags.writeable = False
        return cls(limit=limit, bits=bits, rank=rank, _words=words)

    def __len__(self) -> int:
        return int(self.rank[-1])

    def __contains__(self, x: int) -> bool:
        if not 0 <= x <= self.limit:
            return False
        return bool((int(self.bits[x >> 3]) >> (x & 7)) & 1)

    def count(self, x: int) -> int:
        """W(x) = #{w in W : w <= x}."""
        if not 0 <= x <= self.limit:
            raise RangeError(f"x={x} outside [0, {self.limit}]")
        j, b = divmod(x + 1, 64)
        c = int(self.rank[j])
        if b:
            c += (int(self._words[j]) & ((1 << b) - 1)).bit_count()
        return c

    def count_many(self, xs) -> np.ndarray:
        """Vectorised W(x) for an array of x in [0, limit]."""
        xs = np.asarray(xs, dtype=np.int64)
        if xs.size and (xs.min() < 0 or xs.max() > self.limit):
            raise RangeError(f"query outside [0, {self.limit}]")
        j, b = np.divmod(xs + 1, 64)
        out = self.rank[j].copy()
        has_tail = b > 0
        jt = j[has_tail]
        low = (np.uint64(1) << b[has_tail].astype(np.uint64)) - np.uint64(1)
        out[has_tail] += np.bitwise_count(self._words[jt] & low).astype(np.int64)
        return out

    def mask(self, upto: int | None = None) -> np.ndarray:
        """Boolean membership over [0, upto] (default: the whole limit)."""
        upto = self.limit if upto is None else upto
        if not 0 <= upto <= self.limit:
            raise RangeError(f"upto={upto} outside [0, {self.limit}]")
        return np.unpackbits(self.bits, count=upto + 1, bitorder="little").view(bool)

    def elements(self, upto: int | None = None) -> np.ndarray:
        """Sorted members not exceeding ``upto``."""
        return np.flatnonzero(self.mask(upto)).astype(np.int64)

    def same_as(self, other: ComplementSet) -> bool:
        return self.limit == other.limit and np.array_equal(self.bits, other.bits)


def _check_limit(limit: int) -> None:
    if limit < 0:
        raise InvalidParameterError(f"limit must be >= 0, got {limit}")
    if limit > ADDRESS_BUDGET:
        raise CapacityError(f"limit {limit} exceeds address budget {ADDRESS_BUDGET}")


def greedy_complement(r: int, N: int) -> ComplementSet:
    """Greedy complement of the r-th powers covering every n in [1, N].

    Scanning n upward, an uncovered n triggers insertion of its residue
    n - floor(n^(1/r))^r; every n + m^r hit by a new element is marked.
    """
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    _check_limit(N)
    powers = build_powers(r, N).values
    covered = np.zeros(N + 1, dtype=bool)
    covered[0] = True
    members = []
    pos = 1
    while pos <= N:
        gaps = np.flatnonzero(~covered[pos : pos + _GREEDY_SCAN])
        if gaps.size == 0:
            pos += _GREEDY_SCAN
            continue
        n = pos + int(gaps[0])
        w = n - iroot(n, r) ** r
        members.append(w)
        j = np.searchsorted(powers, N - w, side="right")
        covered[w + powers[:j]] = True
        pos = n + 1
    return ComplementSet.from_elements(np.array(members, dtype=np.int64), N)


def schedule_values(alpha: float, N: int) -> np.ndarray:
    """Distinct values round_half_up(alpha * n^2) <= N for n >= 1."""
    if not alpha > 0 or not math.isfinite(alpha):
        raise InvalidParameterError(f"alpha must be a positive real, got {alpha}")
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    n_hi = int(math.sqrt((N + 1) / alpha)) + 2
    n = np.arange(1, n_hi + 1, dtype=np.float64)
    vals = np.floor(alpha * n * n + 0.5).astype(np.int64)
    return np.unique(vals[vals <= N])


def schedule_complement(alpha: float = math.pi**2 / 16, N: int = 1) -> ComplementSet:
    """The set {round(alpha * n^2)} truncated at N; duplicates collapse."""
    _check_limit(N)
    return ComplementSet.from_elements(schedule_values(alpha, N), N)


def save_complement(W: ComplementSet, path, format: str = "binary") -> None:
    path = Path(path)
    if format == "binary":
        with path.open("wb") as fh:
            fh.write(BINARY_MAGIC)
            fh.write(struct.pack("<Q", W.limit))
            fh.write(W.bits.tobytes())
    elif format == "text":
        with path.open("w") as fh:
            fh.write(f"# limit={W.limit}\n")
            for w in W.elements():
                fh.write(f"{w}\n")
    else:
        raise InvalidParameterError(f"unknown set format {format!r}")


def load_complement(path, format: str | None = None, limit: int | None = None) -> ComplementSet:
    """Read a set file. ``format`` is sniffed from the magic bytes if omitted.

    Text files take their limit from a ``# limit=L`` header, then from the
    ``limit`` argument, then from the largest element.
    """
    path = Path(path)
    if format is None:
        with path.open("rb") as fh:
            format = "binary" if fh.read(4) == BINARY_MAGIC else "text"
    if format == "binary":
        return _load_binary(path)
    if format == "text":
        return _load_text(path, limit)
    raise InvalidParameterError(f"unknown set format {format!r}")


def _load_binary(path: Path) -> ComplementSet:
    data = path.read_bytes()
    if len(data) < 12 or data[:4] != BINARY_MAGIC:
        raise FormatError(f"{path}: bad magic or truncated header")
    (limit,) = struct.unpack_from("<Q", data, 4)
    if limit > ADDRESS_BUDGET:
        raise FormatError(f"{path}: declared limit {limit} exceeds address budget")
    nbytes = (limit + 8) // 8
    payload = data[12:]
    if len(payload) != nbytes:
        raise FormatError(f"{path}: expected {nbytes} bytes of bits, found {len(payload)}")
    return ComplementSet.from_bits(np.frombuffer(payload, dtype=np.uint8), limit)


def _load_text(path: Path, limit: int | None) -> ComplementSet:
    header_limit = None
    values = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s:
                continue
            if s.startswith("#"):
                key, _, val = s[1:].strip().partition("=")
                if lineno == 1 and key.strip() == "limit":
                    try:
                        header_limit = int(val)
                    except ValueError:
                        raise FormatError(f"{path}:1: bad limit header {s!r}") from None
                    continue
                raise FormatError(f"{path}:{lineno}: unexpected comment line")
            try:
                v = int(s)
            except ValueError:
                raise FormatError(f"{path}:{lineno}: not an integer: {s!r}") from None
            if v < 0:
                raise FormatError(f"{path}:{lineno}: negative element {v}")
            if values and v <= values[-1]:
                raise FormatError(f"{path}:{lineno}: elements not strictly ascending")
            values.append(v)
    if header_limit is not None:
        limit = header_limit
    elif limit is None:
        limit = values[-1] if values else 0
    if values and values[-1] > limit:
        raise FormatError(f"{path}: element {values[-1]} exceeds limit {limit}")
    return ComplementSet.from_elements(np.array(values, dtype=np.int64), limit)


@dataclass
class CoverageReport:
    N: int
    n0: int
    uncovered: np.ndarray
    uncovered_count: int


def coverage_report(W: ComplementSet, ps: PowerSet, N: int, n0: int = 0, workers: int | None = None) -> CoverageReport:
    """All n in (n0, N] with no representation n = w + m^r."""
    from .repcount import representation_counts

    prof = representation_counts(W, ps, N, n0=n0, workers=workers)
    return CoverageReport(N=N, n0=n0, uncovered=prof.uncovered, uncovered_count=prof.uncovered_count)


def counting_function(W: ComplementSet, x: int) -> int:
    return W.count(x)


@dataclass
class RatioProfile:
    x: np.ndarray
    ratio: np.ndarray
    running_min: np.ndarray
    running_max: np.ndarray


def counting_ratio_profile(W: ComplementSet, checkpoints) -> RatioProfile:
    """W(x) / sqrt(x) at each checkpoint, with running extrema."""
    x = np.asarray(list(checkpoints), dtype=np.int64)
    if x.size == 0:
        empty = np.zeros(0)
        return RatioProfile(x, empty, empty, empty)
    if np.any(np.diff(x) <= 0):
        raise InvalidParameterError("checkpoints must be strictly ascending")
    if x[0] < 1 or x[-1] > W.limit:
        raise RangeError(f"checkpoints must lie in [1, {W.limit}]")
    ratio = W.count_many(x) / np.sqrt(x.astype(np.float64))
    return RatioProfile(x, ratio, np.minimum.accumulate(ratio), np.maximum.accumulate(ratio))
