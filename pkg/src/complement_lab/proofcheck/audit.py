"""Step-by-step audit of the lower-bound argument on a concrete finite set.

Each step records both sides, a verdict and a class. ``exact`` steps are
algebraic identities or finite counting facts and must hold for every input;
a failure raises IntegrityError. ``observational`` steps depend on
asymptotic inputs (the liminf density bound, o(1) terms, the set being a true
complement) and are only reported.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from ..complements import ComplementSet
from ..errors import IntegrityError, InvalidParameterError, NumericEnvironmentError
from ..powers import PowerSet, build_powers
from ..repcount import RepProfile, crosscheck_identity, representation_counts
from .buckets import BucketProfile, abel_identity_check, bucket_profile
from .collisions import (
    CollisionHistogram,
    WitnessCheck,
    collision_pairs,
    histogram_from_pairs,
    verify_cross_representations,
)
from .constants import FOUR_OVER_PI, bucket_bound_factor, constants_table, optimal_K, theorem1_constant

EXACT = "exact-guaranteed"
OBSERVATIONAL = "asymptotic-observational"

# cross representations are checked for every class up to this N, sampled above
WITNESS_EXHAUSTIVE_N = 10**4
WITNESS_SAMPLE = 2000
# arrays h, g, a are left out of serialised reports above this K
ARRAY_REPORT_MAX_K = 10**4


@dataclass
class AuditStep:
    name: str
    lhs: int | float
    rhs: int | float
    cls: str
    verdict: bool

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "class": self.cls,
            "verdict": "pass" if self.verdict else "fail",
        }


@dataclass
class AuditReport:
    N: int
    r: int
    K: int
    n0: int
    buckets: BucketProfile = field(repr=False)
    histogram: CollisionHistogram = field(repr=False)
    witness: WitnessCheck
    total: int
    raw_excess: int
    adjusted_excess: int
    uncovered_count: int
    steps: list[AuditStep]

    @property
    def exact_ok(self) -> bool:
        return all(s.verdict for s in self.steps if s.cls == EXACT)

    def step(self, name: str) -> AuditStep:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self, arrays: bool | None = None) -> dict:
        if arrays is None:
            arrays = self.K <= ARRAY_REPORT_MAX_K
        out: dict = {"n": self.N, "r": self.r, "k": self.K, "n0": self.n0}
        if arrays:
            out["h"] = self.buckets.h.tolist()
            out["g"] = self.buckets.g.tolist()
            out["a"] = self.buckets.A.tolist()
        hist = self.histogram
        out.update(
            pair_total=hist.pair_total,
            distinct_d=hist.distinct_d,
            multi_total=hist.multi_total,
            binom_sum=hist.binom_sum,
            total=self.total,
            raw_excess=self.raw_excess,
            adjusted_excess=self.adjusted_excess,
            excess_ratio=self.adjusted_excess / self.N,
            uncovered_count=self.uncovered_count,
            steps=[s.as_dict() for s in self.steps],
        )
        t = constants_table(self.r)
        out["constants"] = {
            "c0": t.c0,
            "k_opt": t.k_opt,
            "gamma_density": t.gamma_density,
            "c_r": t.c_r,
            "corollary3_lower": t.corollary3_lower,
            "van_doorn_upper": t.van_doorn_upper,
        }
        out["integrity"] = "pass" if self.exact_ok else "fail"
        return out

    def to_json(self, **extra) -> str:
        d = self.to_dict()
        d.update(extra)
        return json.dumps(d, indent=2)


def open_window_size(N: int, K: int) -> int:
    """Number of integers d with -N/2K < d < N/2K."""
    return 2 * ((N - 1) // (2 * K)) + 1


def inequality_audit(
    W: ComplementSet,
    ps: PowerSet,
    N: int,
    K: int,
    profile: RepProfile,
    workers: int | None = None,
    witness_sample: int | None = None,
) -> AuditReport:
    """Audit every step of the bucket/collision argument for (W, N, K).

    Raises IntegrityError (with the finished report attached as ``.report``)
    if any exact step fails.
    """
    if profile.N != N or profile.r != ps.r:
        raise InvalidParameterError("profile does not match (N, r)")
    steps: list[AuditStep] = []

    def add(name, lhs, rhs, cls, ok):
        steps.append(AuditStep(name, lhs, rhs, cls, bool(ok)))

    try:
        ident = crosscheck_identity(W, ps, N, profile=profile)
        add("corollary3_identity", ident.lhs, ident.rhs, EXACT, True)
    except IntegrityError:
        rhs = int(W.count_many(N - ps.values[ps.values <= N]).sum())
        add("corollary3_identity", profile.total, rhs, EXACT, False)

    bp = bucket_profile(W, ps, N, K)
    try:
        abel = abel_identity_check(bp)
        add("abel_identity", abel.direct, abel.rearranged, EXACT, True)
    except IntegrityError:
        add("abel_identity", bp.sum_hg, -1, EXACT, False)
    below_half = W.count((N - 1) // 2)
    add("prefix_total", int(bp.A[-1]), below_half, EXACT, int(bp.A[-1]) == below_half)

    pairs = collision_pairs(W, ps, N, K, workers=workers)
    hist = histogram_from_pairs(pairs, N, K)
    sum_hg = bp.sum_hg
    add("pair_total", hist.pair_total, sum_hg, EXACT, hist.pair_total == sum_hg)
    window = open_window_size(N, K)
    add("difference_window", hist.distinct_d, window, EXACT, hist.distinct_d <= window)
    add(
        "multi_class_exact",
        hist.multi_total,
        hist.pair_total - hist.distinct_d,
        EXACT,
        hist.multi_total >= hist.pair_total - hist.distinct_d,
    )
    multi = hist.ell[hist.ell >= 2]
    # C(l,2) >= l^2/4 >= l/2 per class, in integers: 2l(l-1) >= l^2 and l^2 >= 2l
    add(
        "binomial_vs_square",
        hist.binom_sum,
        hist.square_sum / 4,
        EXACT,
        np.all(2 * multi * (multi - 1) >= multi * multi) and 4 * hist.binom_sum >= hist.square_sum,
    )
    add(
        "square_vs_linear",
        hist.square_sum / 4,
        hist.multi_total / 2,
        EXACT,
        np.all(multi * multi >= 2 * multi) and hist.square_sum >= 2 * hist.multi_total,
    )

    if witness_sample is None:
        witness_sample = None if N <= WITNESS_EXHAUSTIVE_N else WITNESS_SAMPLE
    wit = verify_cross_representations(pairs, N, f=profile.f, max_classes=witness_sample)
    add("cross_representation", wit.pairs_checked - wit.failures, wit.pairs_checked, EXACT, wit.failures == 0)

    # observational steps
    k = np.arange(1, K + 1, dtype=np.float64)
    growth = float(np.min(bp.A / np.sqrt(k * N / (2 * K))))
    add("growth_condition", growth, FOUR_OVER_PI, OBSERVATIONAL, growth >= FOUR_OVER_PI)
    nonmono = int(np.count_nonzero(bp.g[:-1] < bp.g[1:]))
    add("g_monotone", nonmono, 0, OBSERVATIONAL, nonmono == 0)
    pair_bound = N * math.log(K) / (2 * math.pi * K)
    add("pair_sum_lower_bound", sum_hg, pair_bound, OBSERVATIONAL, sum_hg >= pair_bound)
    multi_bound = N / K * (math.log(K) / (2 * math.pi) - 1)
    add("multi_class_lower_bound", hist.multi_total, multi_bound, OBSERVATIONAL, hist.multi_total >= multi_bound)
    adj, raw = profile.adjusted_excess, profile.raw_excess
    add("excess_vs_collisions", adj, hist.binom_sum, OBSERVATIONAL, adj >= hist.binom_sum)
    add("raw_excess_vs_collisions", raw, hist.binom_sum, OBSERVATIONAL, raw >= hist.binom_sum)
    excess_bound = N * bucket_bound_factor(K)
    add("excess_lower_bound", adj, excess_bound, OBSERVATIONAL, adj >= excess_bound)
    c0 = theorem1_constant()
    add("theorem1_ratio", adj / N, c0, OBSERVATIONAL, adj / N >= c0)

    report = AuditReport(
        N=N,
        r=ps.r,
        K=K,
        n0=profile.n0,
        buckets=bp,
        histogram=hist,
        witness=wit,
        total=profile.total,
        raw_excess=raw,
        adjusted_excess=adj,
        uncovered_count=profile.uncovered_count,
        steps=steps,
    )
    if not report.exact_ok:
        failed = [s.name for s in steps if s.cls == EXACT and not s.verdict]
        err = IntegrityError(f"exact audit steps failed: {', '.join(failed)}")
        err.report = report
        raise err
    return report


def run_audit(
    W: ComplementSet,
    N: int,
    K: int | None = None,
    r: int = 2,
    n0: int = 0,
    workers: int | None = None,
) -> AuditReport:
    """Representation counts, buckets, histogram and audit for one (W, N, K)."""
    K = optimal_K() if K is None else K
    ps = build_powers(r, N)
    profile = representation_counts(W, ps, N, n0=n0, workers=workers)
    return inequality_audit(W, ps, N, K, profile, workers=workers)


@dataclass
class HarmonicCheck:
    K: int
    square_sum: float  # sum_{k<=K} (sqrt k - sqrt(k-1))^2
    quarter_harmonic: float  # (1/4) sum_{k<=K} 1/k
    log_bound: float  # log(K+1)/4
    holds: bool


def harmonic_chain_table(K_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The three chain quantities for every K = 1..K_max (index K-1)."""
    if K_max < 1:
        raise InvalidParameterError(f"K must be >= 1, got {K_max}")
    k = np.arange(1, K_max + 1, dtype=np.float64)
    # (sqrt k - sqrt(k-1))^2 == 1 / (sqrt k + sqrt(k-1))^2, without cancellation
    sq = np.cumsum(1.0 / (np.sqrt(k) + np.sqrt(k - 1)) ** 2)
    harm = np.cumsum(1.0 / k) / 4
    logb = np.log1p(k) / 4
    return sq, harm, logb


def harmonic_bound_check(K: int) -> HarmonicCheck:
    sq, harm, logb = harmonic_chain_table(K)
    holds = bool(sq[-1] >= harm[-1] > logb[-1])
    if not holds:
        raise NumericEnvironmentError(f"harmonic chain violated at K={K}")
    return HarmonicCheck(K, float(sq[-1]), float(harm[-1]), float(logb[-1]), holds)
