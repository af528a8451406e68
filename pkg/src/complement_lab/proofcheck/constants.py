"""Explicit constants: c0, K_opt, the Gamma density, c_r and the L_S bracket."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from ..errors import InvalidExponentError

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
FOUR_OVER_PI = 4 / math.pi


def optimal_K() -> int:
    """floor(e^(1 + 2 pi)) + 1.

    e^(1+2pi) = 1455.40..., far from an integer, so double precision decides
    the floor safely.
    """
    return math.floor(math.exp(1 + 2 * math.pi)) + 1


def theorem1_constant() -> float:
    """c0 = 1 / (4 pi (e^(1+2pi) + 1))."""
    return 1.0 / (4 * math.pi * (math.exp(1 + 2 * math.pi) + 1))


def bucket_bound_factor(K: int) -> float:
    """(1 / 2K) * (log K / (2 pi) - 1): the excess lower bound per unit N at K."""
    return (math.log(K) / (2 * math.pi) - 1) / (2 * K)


def _gamma_product(r: int) -> float:
    if r < 2:
        raise InvalidExponentError(f"r must be >= 2, got {r}")
    return math.gamma(2 - 1 / r) * math.gamma(1 + 1 / r)


def gamma_complement_constant(r: int) -> float:
    """1 / (Gamma(2 - 1/r) Gamma(1 + 1/r)); equals 4/pi at r = 2."""
    return 1.0 / _gamma_product(r)


gamma_density = gamma_complement_constant


def theorem2_constant(r: int) -> float:
    """c_r = (r-1) / (4 r^2 G e^(1 + 2 r^2 G / (r-1))), G = Gamma(1+1/r) Gamma(2-1/r)."""
    G = _gamma_product(r)
    return (r - 1) / (4 * r * r * G * math.exp(1 + 2 * r * r * G / (r - 1)))


def van_doorn_upper() -> float:
    return 2 * GOLDEN_RATIO**2.5


def corollary3_bound() -> tuple[float, float]:
    """Bracket [(4/pi)(1 + c0), 2 phi^(5/2)] on the smallest limsup W(N)/sqrt(N)."""
    return FOUR_OVER_PI * (1 + theorem1_constant()), van_doorn_upper()


@dataclass(frozen=True)
class ConstantsTable:
    r: int
    c0: float
    k_opt: int
    gamma_density: float
    c_r: float
    four_over_pi: float
    corollary3_lower: float
    van_doorn_upper: float

    def as_dict(self) -> dict:
        return asdict(self)


def constants_table(r: int = 2) -> ConstantsTable:
    lower, upper = corollary3_bound()
    return ConstantsTable(
        r=r,
        c0=theorem1_constant(),
        k_opt=optimal_K(),
        gamma_density=gamma_complement_constant(r),
        c_r=theorem2_constant(r),
        four_over_pi=FOUR_OVER_PI,
        corollary3_lower=lower,
        van_doorn_upper=upper,
    )
