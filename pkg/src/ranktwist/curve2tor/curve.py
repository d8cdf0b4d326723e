"""Curves y^2 = (x - a1)(x - a2)(x - a3) and their rational points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ..arith import factor, squarefree_part
from ..qlocal import INF


@dataclass(frozen=True)
class Curve:
    a1: int
    a2: int
    a3: int

    def __post_init__(self):
        a = (self.a1, self.a2, self.a3)
        if any(not isinstance(x, int) for x in a):
            raise TypeError("roots must be integers")
        if len(set(a)) != 3:
            raise ValueError("roots must be distinct")

    @property
    def roots(self) -> tuple[int, int, int]:
        return (self.a1, self.a2, self.a3)

    @property
    def alpha(self) -> int:
        return self.a1 - self.a2

    @property
    def beta(self) -> int:
        return self.a1 - self.a3

    @property
    def gamma(self) -> int:
        return self.a2 - self.a3

    @property
    def disc(self) -> int:
        return 16 * (self.alpha * self.beta * self.gamma) ** 2

    @cached_property
    def bad_primes(self) -> tuple[int, ...]:
        return tuple(sorted(set(factor(self.disc)) | {2, 3}))

    @cached_property
    def places(self) -> tuple[int, ...]:
        """Real place, 2, 3 and the primes of bad reduction."""
        return (INF,) + self.bad_primes

    @property
    def conductor_radical(self) -> int:
        out = 1
        for p in self.bad_primes:
            out *= p
        return out

    # Weierstrass coefficients of x^3 + A2 x^2 + A4 x + A6
    @property
    def A2(self) -> int:
        return -(self.a1 + self.a2 + self.a3)

    @property
    def A4(self) -> int:
        return self.a1 * self.a2 + self.a1 * self.a3 + self.a2 * self.a3

    @property
    def A6(self) -> int:
        return -self.a1 * self.a2 * self.a3

    def f(self, x):
        return (x - self.a1) * (x - self.a2) * (x - self.a3)

    def contains(self, P) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == self.f(x)

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if y1 + y2 == 0:
                return None
            lam = (3 * x1 * x1 + 2 * self.A2 * x1 + self.A4) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam - self.A2 - x1 - x2
        return (x3, -(y1 + lam * (x3 - x1)))

    def neg(self, P):
        return None if P is None else (P[0], -P[1])

    def mul(self, n: int, P):
        if n < 0:
            return self.mul(-n, self.neg(P))
        R, Q = None, P
        while n:
            if n & 1:
                R = self.add(R, Q)
            Q = self.add(Q, Q)
            n >>= 1
        return R

    def two_torsion(self):
        return [(Fraction(a), Fraction(0)) for a in self.roots]

    def is_torsion(self, P) -> bool:
        """Mazur bounds torsion orders by 12, so P is torsion iff 24 P = O.

        Multiples are integral on this (integral) model while P is torsion,
        so a non-integral multiple proves infinite order early.
        """
        Q = P
        for k in range(1, 25):
            if Q is None:
                return True
            if Q[0].denominator != 1 or Q[1].denominator != 1:
                return False
            Q = self.add(Q, P)
        return False


def point(x, y) -> tuple[Fraction, Fraction]:
    return (Fraction(x), Fraction(y))


def twist(E: Curve, d) -> Curve:
    """Quadratic twist d y^2 = f(x), written as y^2 = (x - d a1)(x - d a2)(x - d a3).

    d is replaced by its squarefree representative.
    """
    d = squarefree_part(Fraction(d))
    return Curve(d * E.a1, d * E.a2, d * E.a3)


def same_up_to_scaling(E1: Curve, E2: Curve) -> bool:
    """Whether x -> r x + s with r a nonzero rational square maps roots to roots."""
    r = Fraction(E2.alpha, E1.alpha)
    s = E2.a1 - r * E1.a1
    if any(r * a + s != b for a, b in zip(E1.roots, E2.roots)):
        return False
    return r > 0 and squarefree_part(r) == 1
