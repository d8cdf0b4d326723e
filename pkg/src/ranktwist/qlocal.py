"""Square classes of Q and of its completions, Hilbert symbols, prime search.

Places are positive primes, plus ``INF`` (the integer 0) for the real place.
A local square class at v is an int bitset:

* real place: bit 0 = negative;
* odd p, x = p^e u: bit 0 = u is a non-residue, bit 1 = e odd;
* p = 2, x = 2^e u: u = (-1)^i 5^j mod squares gives bit 0 = i, bit 1 = j,
  and bit 2 = e odd.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from fractions import Fraction
from functools import reduce
from operator import mul

from .arith import crt, factor, is_prime, legendre, squarefree_part, valuation
from .errors import Inconsistent, NotFound

INF = 0


def place_name(v: int) -> str:
    return "inf" if v == INF else str(v)


def local_dim(v: int) -> int:
    return 1 if v == INF else 3 if v == 2 else 2


@dataclass(frozen=True, order=True)
class SquareClass:
    """Element of Q*/Q*^2, kept as its squarefree integer representative."""

    value: int

    def __post_init__(self):
        if self.value == 0 or squarefree_part(self.value) != self.value:
            raise ValueError(f"{self.value} is not a squarefree integer")

    @classmethod
    def of(cls, x) -> "SquareClass":
        if isinstance(x, SquareClass):
            return x
        if isinstance(x, float):
            raise TypeError("floats have no exact square class")
        return cls(squarefree_part(Fraction(x)))

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else 1

    @property
    def support(self) -> frozenset[int]:
        return frozenset(factor(self.value)) if abs(self.value) > 1 else frozenset()

    def __mul__(self, other) -> "SquareClass":
        return SquareClass.of(self.value * SquareClass.of(other).value)

    __rmul__ = __mul__

    def is_trivial(self) -> bool:
        return self.value == 1

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"SquareClass({self.value})"


def _unit_bits_2(u: int) -> int:
    return {1: 0b00, 3: 0b11, 5: 0b10, 7: 0b01}[u % 8]


def local_class(x, v: int) -> int:
    """Bitset of the class of a nonzero rational (or SquareClass) in Q_v*/Q_v*^2."""
    if isinstance(x, SquareClass):
        x = x.value
    x = Fraction(x)
    if x == 0:
        raise ValueError("0 has no square class")
    if v == INF:
        return int(x < 0)
    n = x.numerator * x.denominator  # same class as x
    e = valuation(n, v)
    u = n // v**e
    if v == 2:
        return _unit_bits_2(u) | ((e & 1) << 2)
    return int(legendre(u, v) == -1) | ((e & 1) << 1)


def local_representative(bits: int, v: int) -> int:
    """A small integer whose class at v has the given bitset."""
    if v == INF:
        return -1 if bits & 1 else 1
    if v == 2:
        return (-1 if bits & 1 else 1) * (5 if bits & 2 else 1) * (2 if bits & 4 else 1)
    return (least_nonresidue(v) if bits & 1 else 1) * (v if bits & 2 else 1)


def least_nonresidue(p: int) -> int:
    n = 2
    while legendre(n, p) != -1:
        n += 1
    return n


def is_local_square(x, v: int) -> bool:
    return local_class(x, v) == 0


def hilbert_symbol(a, b, v: int) -> int:
    """(a, b)_v for nonzero rationals, from the standard closed formulas."""
    a, b = Fraction(a), Fraction(b)
    a = a.numerator * a.denominator
    b = b.numerator * b.denominator
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of 0")
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    al, be = valuation(a, v), valuation(b, v)
    u, w = a // v**al, b // v**be
    if v == 2:
        eps = lambda t: ((t - 1) // 2) & 1
        om = lambda t: ((t * t - 1) // 8) & 1
        e = eps(u) * eps(w) + al * om(w) + be * om(u)
        return -1 if e & 1 else 1
    s = -1 if (al * be * ((v - 1) // 2)) & 1 else 1
    if be & 1:
        s *= legendre(u, v)
    if al & 1:
        s *= legendre(w, v)
    return s


def local_pairing_matrix(v: int) -> list[int]:
    """Rows M with (x, y)_v = (-1)^(x^T M y) on local class bitsets."""
    if v == INF:
        return [0b1]
    if v == 2:
        # basis -1, 5, 2: (-1,-1) = -1, (5,2) = -1, everything else +1
        return [0b001, 0b100, 0b010]
    return [0b10, 0b11 if v % 4 == 3 else 0b01]


def local_hilbert(x: int, y: int, v: int) -> int:
    """Hilbert symbol evaluated on local class bitsets."""
    m = local_pairing_matrix(v)
    s = 0
    for i, row in enumerate(m):
        if (x >> i) & 1:
            s ^= bin(row & y).count("1") & 1
    return -1 if s else 1


def reciprocity_audit(a, b) -> tuple[dict[int, int], int]:
    """All local symbols (a, b)_v at relevant places, and their product."""
    a, b = SquareClass.of(a), SquareClass.of(b)
    places = sorted(a.support | b.support | {2} | {INF})
    sym = {v: hilbert_symbol(a.value, b.value, v) for v in places}
    return sym, reduce(mul, sym.values(), 1)


def find_prime(
    congruences=(),
    sign: int = 1,
    legendre_conditions=(),
    exclude=(),
    bound: int = 10**6,
    residue_conditions=(),
) -> int:
    """Least prime p meeting the constraints, returned as sign * p.

    congruences: pairs (r, m) asking p = r mod m, with r a unit mod m.
    legendre_conditions: pairs (q, s) asking (p | q) = s for odd primes q.
    residue_conditions: pairs (a, s) asking (a | p) = s.
    bound: number of candidates p examined before giving up.
    """
    rs, ms = [], []
    for r, m in congruences:
        if m < 1:
            raise Inconsistent(f"modulus {m} must be positive")
        if m > 1 and gcd(r, m) != 1:
            raise Inconsistent(f"residue {r} is not a unit mod {m}")
        rs.append(r % m)
        ms.append(m)
    for q, s in legendre_conditions:
        if s not in (1, -1) or q < 3 or not is_prime(q):
            raise Inconsistent(f"bad Legendre condition ({q}, {s})")
    for a, s in residue_conditions:
        if s not in (1, -1):
            raise Inconsistent(f"bad residue condition ({a}, {s})")
    sol = crt(rs, ms) if ms else (0, 1)
    if sol is None:
        raise Inconsistent("congruences have no common solution")
    r, m = sol
    excl = {abs(int(e)) for e in exclude}
    p = r if r >= 2 else r + m * ((2 - r + m - 1) // m)
    for _ in range(bound):
        if (
            is_prime(p)
            and p not in excl
            and all(legendre(p, q) == s for q, s in legendre_conditions)
            and all(_residue_symbol(a, p) == s for a, s in residue_conditions)
        ):
            return sign * p
        p += m
    raise NotFound("find_prime", bound)


def _residue_symbol(a, p: int) -> int:
    if p == 2:
        return 0
    a = Fraction(a)
    if a.denominator % p == 0:
        return 0
    return legendre(a.numerator * pow(a.denominator, -1, p), p)

