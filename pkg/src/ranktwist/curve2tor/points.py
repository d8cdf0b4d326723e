"""Torsion subgroups and naive point search."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from ..arith import factor
from .curve import Curve


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factor(n).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def integer_roots(c3: int, c2: int, c1: int, c0: int) -> list[int]:
    """Integer roots of c3 x^3 + c2 x^2 + c1 x + c0 with c3 != 0, exactly."""
    f = lambda x: ((c3 * x + c2) * x + c1) * x + c0
    bound = 1 + max(abs(c2), abs(c1), abs(c0))
    # split at the critical points so f is monotone on each piece
    cuts = [-bound, bound]
    disc = c2 * c2 - 3 * c3 * c1
    if disc >= 0:
        s = isqrt(disc)
        for num in (-c2 - s, -c2 + s):
            base = num // (3 * c3)
            cuts += [max(-bound, min(bound, base + k)) for k in (-1, 0, 1, 2)]
    cuts = sorted(set(cuts))
    roots = {x for x in cuts if f(x) == 0}
    for lo, hi in zip(cuts, cuts[1:]):
        if f(lo) == 0 or f(hi) == 0 or (f(lo) > 0) == (f(hi) > 0):
            continue
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if (f(mid) > 0) == (f(lo) > 0):
                lo = mid
            else:
                hi = mid
        roots |= {x for x in (lo, hi) if f(x) == 0}
    return sorted(roots)


def torsion_subgroup(E: Curve):
    """Rational torsion as ((2, n), points) for the group Z/2 x Z/n.

    Lutz-Nagell: torsion points are integral with y = 0 or y^2 dividing the
    discriminant, so y runs over divisors of 4 alpha beta gamma.
    """
    D = 4 * abs(E.alpha * E.beta * E.gamma)
    cands = [(Fraction(a), Fraction(0)) for a in E.roots]
    for y in _divisors(D):
        for x in integer_roots(1, E.A2, E.A4, E.A6 - y * y):
            cands += [(Fraction(x), Fraction(y)), (Fraction(x), Fraction(-y))]
    pts = sorted({P for P in cands if _order(E, P)})
    return (2, (len(pts) + 1) // 2), [None] + pts


def _order(E: Curve, P) -> int:
    Q = P
    for k in range(1, 13):
        if Q is None:
            return k
        Q = E.add(Q, P)
    return 0


def point_search(E: Curve, bound: int) -> list:
    """Affine points with x = u / w^2, |u| <= bound, 1 <= w <= bound."""
    found = set(E.two_torsion())
    for w in range(1, bound + 1):
        w2 = w * w
        for u in range(-bound, bound + 1):
            if w > 1 and gcd(u, w) != 1:
                continue
            F = (u - E.a1 * w2) * (u - E.a2 * w2) * (u - E.a3 * w2)
            if F < 0:
                continue
            r = isqrt(F)
            if r * r != F:
                continue
            x, y = Fraction(u, w2), Fraction(r, w2 * w)
            found.add((x, y))
            found.add((x, -y))
    return sorted(found)
