import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import constellation_brute
from ranktwist.constellation import (
    Region,
    admissibility_check,
    beta_p,
    build_system,
    count_and_compare,
    region_from_system,
    region_volume,
    singular_series,
)
from ranktwist.errors import ConfigError


def default_system():
    return build_system(0, 1, 2, kappa=1, m=6, lam=1)


def beta_brute(forms, p):
    count = sum(
        all((a * x + b * y + c) % p for a, b, c in forms)
        for x in range(p) for y in range(p)
    )
    return Fraction(p, p - 1) ** 4 * Fraction(count, p * p)


def test_build_example():
    s = default_system()
    assert s.forms == ((36, 0, 1), (36, 1296, 37), (36, 2592, 73), (0, 36, 1))
    assert s.describe()["L4"] == [0, 36, 1]


@pytest.mark.parametrize("xy", [(0, 0), (1, -2), (-3, 5), (7, 7)])
def test_factorization_identity(xy):
    s = default_system()
    x, y = xy
    c, d = s.c(x, y), s.d(x, y)
    rhs = Fraction(d, s.m**2) * math.prod(c + a * d for a in s.a)
    assert s.t(x, y) == rhs
    assert s.values(x, y)[:3] == tuple(c + a * d for a in s.a)


def test_build_rejects_bad_parameters():
    with pytest.raises(ConfigError):
        build_system(0, 1, 1)
    with pytest.raises(ConfigError):
        build_system(0, 1, 2, lam=3)
    with pytest.raises(ConfigError):
        build_system(0, 1, 2, m=4, strict=True)
    build_system(0, 1, 2, m=24, strict=True)


def test_small_betas():
    s = default_system()
    assert beta_p(s, 2) == 16
    assert beta_p(s, 3) == Fraction(81, 16)
    assert beta_p(s, 5) == Fraction(25, 32) == Fraction(78125, 100000)
    assert float(beta_p(s, 2) * beta_p(s, 3) * beta_p(s, 5)) == 63.28125


@pytest.mark.parametrize("p", [7, 11, 13, 29, 31])
def test_betas_against_brute_count(p):
    s = default_system()
    assert beta_p(s, p) == beta_brute(s.forms, p)


def test_line_count_matches_enumeration():
    rng = random.Random(3)
    for _ in range(10):
        a = rng.sample(range(-20, 21), 3)
        try:
            s = build_system(*a, m=rng.randint(1, 9), odd_modulus=1)
        except ConfigError:
            continue
        for p in (7, 11, 13, 17, 101):
            assert beta_p(s, p, "lines") == beta_p(s, p, "enum")


def test_beta_at_primes_dividing_scale_only():
    # p | m kappa but no constant term: forms are units at (0, 0)
    s = build_system(0, 1, 2, m=6 * 7)
    assert beta_p(s, 7) == Fraction(7, 6) ** 4


def test_beta_positive_for_large_primes():
    s = default_system()
    for p in (211, 223, 1009):
        assert beta_p(s, p) >= Fraction(p, p - 1) ** 4 * Fraction(p * p - 4 * p, p * p)


def test_inadmissible_system():
    s = build_system(0, 1, 2, m=2)
    assert admissibility_check(s) == 3
    with pytest.raises(ConfigError):
        singular_series(s)
    rep = count_and_compare(s, None, 20)
    assert rep.prediction == 0 and rep.witnesses == []
    assert admissibility_check(default_system()) is None


def test_singular_series_diagnostic():
    S = singular_series(default_system(), cutoff=1000)
    assert S.value > 0 and S.relative_change < 0.01
    assert S.small_betas[0] == (2, Fraction(16))
    # truncating at P = 1 gives the empty product
    assert singular_series(default_system(), cutoff=1).value == 1.0


def test_volume_examples():
    assert region_volume(Region(((1, 0, 0),)))[0] == 2
    assert region_volume(Region(()))[0] == 4
    assert region_volume(Region(((1, 0, 0), (0, 1, 0))))[0] == 1
    # constants are dropped
    assert region_volume(Region(((1, 0, 5), (0, 1, -3))))[0] == 1
    with pytest.raises(ValueError):
        region_volume(Region(((1, 0, 0), (-1, 0, 0))))
    with pytest.raises(ValueError):
        region_volume(Region(((1, 0, 0), (0, 0, 0))))
    assert region_volume(region_from_system(default_system()))[0] == 1


def test_monte_carlo_volume_within_three_se():
    rng = random.Random(17)
    done = 0
    while done < 20:
        hp = tuple((rng.randint(-5, 5), rng.randint(-5, 5), 0) for _ in range(rng.randint(1, 3)))
        R = Region(hp)
        try:
            exact, _ = region_volume(R)
        except ValueError:
            continue
        est, se = region_volume(R, method="mc", samples=20000, seed=done)
        assert abs(est - exact) <= 3 * se, (hp, est, exact, se)
        done += 1


@pytest.mark.parametrize("N", [10, 20, 30])
def test_count_matches_brute_force(N):
    s = default_system()
    R = region_from_system(s)
    rep = count_and_compare(s, R, N, cutoff=200)
    wit, total = constellation_brute(s.forms, R.halfplanes, N)
    assert rep.witnesses == wit
    assert rep.weighted_count == total
    assert rep.sign_mismatches == 0


def test_count_without_region_positivity_flags_signs():
    s = default_system()
    rep = count_and_compare(s, Region(()), 15, cutoff=100)
    wit, total = constellation_brute(s.forms, (), 15)
    assert rep.witnesses == wit and rep.weighted_count == total
    assert rep.sign_mismatches > 0


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=-30, max_value=30), st.integers(min_value=-30, max_value=30))
def test_values_are_affine(x, y):
    s = default_system()
    v0, v1, v2 = s.values(x, y), s.values(x + 1, y), s.values(x, y + 1)
    for i, (cx, cy, _) in enumerate(s.forms):
        assert v1[i] - v0[i] == cx and v2[i] - v0[i] == cy
