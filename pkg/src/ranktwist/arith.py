"""Elementary integer arithmetic: primality, sieving, valuations, symbols."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import sympy

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Miller-Rabin with the first 13 prime bases has no pseudoprimes below this.
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        return bool(sympy.isprime(n))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_sieve(limit: int) -> np.ndarray:
    """Boolean array `s` of length limit+1 with s[n] true iff n is prime."""
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if s[p]:
            s[p * p :: p] = False
    return s


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    return [int(p) for p in np.flatnonzero(prime_sieve(limit))]


def factor(n: int) -> dict[int, int]:
    """Prime factorisation of |n| (empty for +-1)."""
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor 0")
    return {int(p): int(e) for p, e in sympy.factorint(n).items()}


def valuation(n, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(n, Fraction):
        return valuation(n.numerator, p) - valuation(n.denominator, p)
    n = int(n)
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(n) -> int:
    """Signed squarefree integer in the same square class as n (int or Fraction)."""
    if isinstance(n, Fraction):
        return squarefree_part(n.numerator * n.denominator)
    n = int(n)
    if n == 0:
        raise ValueError("0 has no square class")
    out = -1 if n < 0 else 1
    for p, e in factor(n).items():
        if e % 2:
            out *= p
    return out


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p; 0 when p | a."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def crt(residues: list[int], moduli: list[int]) -> tuple[int, int] | None:
    """Combine x = r_i mod m_i; None when the system is inconsistent."""
    x, m = 0, 1
    for r, n in zip(residues, moduli):
        g = math.gcd(m, n)
        if (r - x) % g:
            return None
        l = m // g * n
        t = ((r - x) // g) * pow(m // g, -1, n // g) % (n // g)
        x = (x + m * t) % l
        m = l
    return x, m
