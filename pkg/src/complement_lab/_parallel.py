from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "COMPLEMENT_LAB_THREADS"


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument wins, then $COMPLEMENT_LAB_THREADS, then all cores."""
    if workers is not None:
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
        return workers
    env = os.environ.get(ENV_THREADS)
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"{ENV_THREADS} must be a positive integer, got {env!r}")
        return n
    return os.cpu_count() or 1


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi) into at most ``parts`` contiguous non-empty pieces."""
    parts = max(1, min(parts, hi - lo))
    step, extra = divmod(hi - lo, parts)
    out, a = [], lo
    for i in range(parts):
        b = a + step + (i < extra)
        out.append((a, b))
        a = b
    return out


def run_tasks(fn, args: list, workers: int) -> list:
    """``[fn(*a) for a in args]``, threaded when workers > 1; order preserved."""
    if workers <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda a: fn(*a), args))
