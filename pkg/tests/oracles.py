"""Brute-force reference implementations. Deliberately naive, pure Python,
and independent of the package's code paths."""

from fractions import Fraction


def powers_upto(r, limit):
    out, m = [], 1
    while m**r <= limit:
        out.append(m**r)
        m += 1
    return out


def rep_counts(W, r, N):
    """f[n] for 0 <= n <= N by the double loop over (w, m)."""
    f = [0] * (N + 1)
    for w in W:
        m = 1
        while w + m**r <= N:
            f[w + m**r] += 1
            m += 1
    return f


def naive_greedy(r, N):
    W = set()
    for n in range(1, N + 1):
        if not any(n - p in W for p in powers_upto(r, n)):
            W.add(n - powers_upto(r, n)[-1])
    return sorted(W)


def bucket_counts(values, N, K):
    """Counts in [(k-1)N/2K, kN/2K) by exact rational comparison."""
    g = [0] * K
    for v in values:
        for k in range(1, K + 1):
            if Fraction((k - 1) * N, 2 * K) <= v < Fraction(k * N, 2 * K):
                g[k - 1] += 1
    return g


def collision_classes(W, r, N, K):
    buckets = lambda v: [k for k in range(1, K + 1) if Fraction((k - 1) * N, 2 * K) <= v < Fraction(k * N, 2 * K)]  # noqa: E731
    ell = {}
    for w in W:
        for p in powers_upto(r, N):
            bw, bp = buckets(w), buckets(p)
            if bw and bw == bp:
                ell[w - p] = ell.get(w - p, 0) + 1
    return ell
