import math

import mpmath
import pytest

from complement_lab.proofcheck.constants import (
    FOUR_OVER_PI,
    bucket_bound_factor,
    constants_table,
    corollary3_bound,
    gamma_complement_constant,
    optimal_K,
    theorem1_constant,
    theorem2_constant,
    van_doorn_upper,
)

mpmath.mp.dps = 40


def mp_gamma_density(r):
    return 1 / (mpmath.gamma(1 + mpmath.mpf(1) / r) * mpmath.gamma(2 - mpmath.mpf(1) / r))


def mp_c_r(r):
    G = 1 / mp_gamma_density(r)
    return (r - 1) / (4 * r * r * G * mpmath.exp(1 + 2 * r * r * G / (r - 1)))


def test_optimal_K_against_high_precision():
    assert optimal_K() == int(mpmath.floor(mpmath.exp(1 + 2 * mpmath.pi))) + 1 == 1456


def test_optimal_K_is_near_the_integer_maximiser():
    best = max(range(1000, 2001), key=bucket_bound_factor)
    assert abs(best - optimal_K()) <= 1


def test_bound_turns_positive_at_536():
    assert math.log(535) < 2 * math.pi < math.log(536)
    assert bucket_bound_factor(535) < 0 < bucket_bound_factor(536)


def test_theorem1_constant():
    c0 = theorem1_constant()
    assert c0 == pytest.approx(float(1 / (4 * mpmath.pi * (mpmath.exp(1 + 2 * mpmath.pi) + 1))), rel=1e-14)
    assert abs(c0 / 5.463e-5 - 1) <= 2e-3
    # the bound at K_opt sits within the floor adjustment of c0
    assert abs(c0 - bucket_bound_factor(optimal_K())) / c0 <= 0.02
    assert c0 > 0


@pytest.mark.parametrize("r", [2, 3, 4, 5, 10, 50])
def test_gamma_density_against_mpmath(r):
    assert gamma_complement_constant(r) == pytest.approx(float(mp_gamma_density(r)), rel=1e-12)


def test_gamma_density_closed_forms():
    assert abs(gamma_complement_constant(2) - 4 / math.pi) <= 1e-12 * (4 / math.pi)
    # Gamma(4/3) Gamma(5/3) = 4 pi / (9 sqrt 3)
    assert gamma_complement_constant(3) == pytest.approx(9 * math.sqrt(3) / (4 * math.pi), rel=1e-12)
    assert gamma_complement_constant(3) == pytest.approx(1.2405, abs=5e-5)


def test_gamma_reference_values():
    assert math.gamma(0.5) == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert math.gamma(1.0) == 1.0
    assert math.gamma(1.5) == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-12)


@pytest.mark.parametrize("r", [2, 3, 4, 7])
def test_theorem2_constant_against_mpmath(r):
    assert theorem2_constant(r) == pytest.approx(float(mp_c_r(r)), rel=1e-12)


def test_theorem2_reduces_at_r2():
    ratio = theorem2_constant(2) / theorem1_constant()
    assert 1 < ratio < 1.001
    assert abs(ratio - 1 - math.exp(-(1 + 2 * math.pi))) <= 1e-9
    assert theorem2_constant(2) == pytest.approx(1 / (4 * math.pi * math.exp(1 + 2 * math.pi)), rel=1e-13)


def test_theorem2_r3_scale():
    assert theorem2_constant(3) == pytest.approx(1.79e-5, rel=0.01)


def test_theorem2_positive():
    assert all(theorem2_constant(r) > 0 for r in range(2, 101))


def test_corollary3_bracket():
    lower, upper = corollary3_bound()
    assert lower == pytest.approx(FOUR_OVER_PI * (1 + theorem1_constant()))
    assert lower == pytest.approx(1.27331, abs=1e-5)
    assert upper == pytest.approx(6.6604, abs=1e-3)
    assert round(upper, 2) == 6.66
    assert van_doorn_upper() == upper
    assert lower < upper


def test_table():
    t = constants_table(3)
    assert t.k_opt == 1456 and t.r == 3
    assert t.c_r == theorem2_constant(3)
    assert set(t.as_dict()) >= {"c0", "k_opt", "gamma_density", "c_r", "corollary3_lower", "van_doorn_upper"}
