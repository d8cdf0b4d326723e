import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hilbert_brute, hilbert_real
from ranktwist.errors import Inconsistent, NotFound
from ranktwist.qlocal import (
    INF,
    SquareClass,
    find_prime,
    hilbert_symbol,
    least_nonresidue,
    local_class,
    local_hilbert,
    local_representative,
    reciprocity_audit,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
nonzero = st.integers(min_value=-10**6, max_value=10**6).filter(bool)
place = st.sampled_from([INF] + SMALL_PRIMES)


def test_square_class_canonical():
    assert SquareClass.of(18) == SquareClass(2)
    assert SquareClass.of(-8) == SquareClass(-2)
    assert (SquareClass(6) * SquareClass(-10)).value == -15
    assert SquareClass.of(49).is_trivial()
    assert SquareClass(-30).support == {2, 3, 5}
    with pytest.raises(ValueError):
        SquareClass(12)


def test_restrict_examples():
    # 18 = 2 * 3^2 and 2 is a non-residue mod 3: unit class u at 3
    assert local_class(18, 3) == 0b01
    # 8 = 2 * 2^2: class of 2 at 2
    assert local_class(8, 2) == 0b100
    assert local_class(7, INF) == 0


@given(nonzero, nonzero, place)
def test_restriction_is_homomorphism(a, b, v):
    assert local_class(a * b, v) == local_class(a, v) ^ local_class(b, v)


@pytest.mark.parametrize("v", [INF, 2, 3, 5, 7, 11])
def test_representatives_round_trip(v):
    n = 1 if v == INF else 3 if v == 2 else 2
    for bits in range(1 << n):
        assert local_class(local_representative(bits, v), v) == bits


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, INF) == -1
    assert hilbert_symbol(3, 5, 5) == -1
    assert hilbert_symbol(2, 17, 17) == 1
    assert hilbert_symbol(-1, -1, 2) == -1
    with pytest.raises(ValueError):
        hilbert_symbol(0, 3, 3)


@given(nonzero, nonzero, nonzero, place)
@settings(max_examples=300)
def test_hilbert_bilinear_symmetric(a, b, c, v):
    assert hilbert_symbol(a * b, c, v) == hilbert_symbol(a, c, v) * hilbert_symbol(b, c, v)
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)


@given(nonzero, nonzero, place)
def test_bitset_pairing_matches_symbol(a, b, v):
    assert local_hilbert(local_class(a, v), local_class(b, v), v) == hilbert_symbol(a, b, v)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_odd_place_symbol_rules(p):
    u = least_nonresidue(p)
    # two even-valuation classes pair trivially
    assert hilbert_symbol(u, u, p) == 1
    assert hilbert_symbol(u, 1, p) == 1
    # (eps, pi) = 1 iff eps is a local square
    for eps in (1, u):
        for pi in (p, u * p):
            assert (hilbert_symbol(eps, pi, p) == 1) == (eps == 1)


def test_reciprocity_examples():
    sym, prod = reciprocity_audit(3, 5)
    assert {v: s for v, s in sym.items() if s == -1} == {3: -1, 5: -1}
    assert prod == 1
    sym, prod = reciprocity_audit(-1, -1)
    assert {v: s for v, s in sym.items() if s == -1} == {INF: -1, 2: -1}
    sym, prod = reciprocity_audit(1, 77)
    assert set(sym.values()) == {1}


@given(nonzero, nonzero)
def test_reciprocity_property(a, b):
    assert reciprocity_audit(a, b)[1] == 1


def test_hilbert_against_conic_search():
    rng = random.Random(5)
    for _ in range(150):
        a, b = rng.choice([-1, 1]) * rng.randint(1, 50), rng.choice([-1, 1]) * rng.randint(1, 50)
        for p in (2, 3, 5, 7, 11):
            assert hilbert_symbol(a, b, p) == hilbert_brute(a, b, p), (a, b, p)
        assert hilbert_symbol(a, b, INF) == hilbert_real(a, b)


def test_find_prime_examples():
    assert find_prime(congruences=[(1, 8)], exclude=range(2, 14)) == 17
    assert find_prime(congruences=[(1, 24)], legendre_conditions=[(5, 1)]) == 241
    with pytest.raises(Inconsistent):
        find_prime(congruences=[(0, 4)])
    with pytest.raises(NotFound):
        find_prime(congruences=[(1, 8)], bound=1, exclude=[17])
    assert find_prime(congruences=[(3, 4)], sign=-1) == -3


@given(st.integers(min_value=2, max_value=200), st.sampled_from([-1, 1]))
def test_find_prime_meets_residue_conditions(a, s):
    if SquareClass.of(a).is_trivial():
        return
    p = find_prime(residue_conditions=[(a, s)], exclude=[2] + list(SquareClass.of(a).support))
    assert hilbert_symbol(a, p, p) == s
