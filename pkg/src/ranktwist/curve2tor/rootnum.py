"""Local root numbers where the reduction type makes them elementary.

Supported: the real place, good reduction, multiplicative reduction (split or
not), and additive reduction at p >= 5.  Additive reduction at 2 or 3 returns
UNSUPPORTED.
"""

from __future__ import annotations

from fractions import Fraction

from ..arith import legendre, valuation
from ..qlocal import INF, local_class
from .curve import Curve

UNSUPPORTED = "unsupported"


def _invariants(a):
    a1, a2, a3, a4, a6 = a
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return c4, c6, disc


def weierstrass(E: Curve) -> tuple[int, int, int, int, int]:
    return (0, E.A2, 0, E.A4, E.A6)


def _scale_down(a, p, r, s, t):
    """Model for x = p^2 x' + r, y = p^3 y' + p^2 s x' + t, or None if not integral."""
    a1, a2, a3, a4, a6 = a
    u = p
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * t
    n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t
    n6 = a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1
    out = []
    for n, k in ((n1, 1), (n2, 2), (n3, 3), (n4, 4), (n6, 6)):
        if n % u**k:
            return None
        out.append(n // u**k)
    return tuple(out)


def minimal_invariants(E: Curve, p: int) -> tuple[int, int, int]:
    """(c4, c6, disc) of an integral model minimal at p."""
    if p >= 5:
        c4, c6, disc = _invariants(weierstrass(E))
        while (
            valuation(disc, p) >= 12
            and (c4 == 0 or valuation(c4, p) >= 4)
            and (c6 == 0 or valuation(c6, p) >= 6)
        ):
            c4, c6, disc = c4 // p**4, c6 // p**6, disc // p**12
        return c4, c6, disc
    return _invariants(_minimal_model_small(E, p))


def _minimal_model_small(E: Curve, p: int):
    # r mod p^2, s mod p, t mod p^3 suffice for the substitution search
    a = weierstrass(E)
    while True:
        c4, c6, disc = _invariants(a)
        if valuation(disc, p) < 12:
            return a
        nxt = None
        for r in range(p * p):
            for s in range(p):
                for t in range(p**3):
                    nxt = _scale_down(a, p, r, s, t)
                    if nxt:
                        break
                if nxt:
                    break
            if nxt:
                break
        if nxt is None:
            return a
        a = nxt


def reduction_type(E: Curve, p: int) -> str:
    c4, c6, disc = minimal_invariants(E, p)
    if valuation(disc, p) == 0:
        return "good"
    if c4 % p:
        g = Fraction(-c4, c6)
        return "split" if local_class(g, p) == 0 else "nonsplit"
    return "additive"


def root_number_local(E: Curve, v: int):
    if v == INF:
        return -1
    kind = reduction_type(E, v)
    if kind == "good":
        return 1
    if kind == "split":
        return -1
    if kind == "nonsplit":
        return 1
    if v in (2, 3):
        return UNSUPPORTED
    c4, c6, disc = minimal_invariants(E, v)
    vd = valuation(disc, v)
    if 3 * (valuation(c4, v) if c4 else 10**9) >= vd:
        # potentially good reduction
        return -1 if (vd * v // 12) % 2 else 1
    return legendre(-1, v)


def root_number(E: Curve):
    """Global root number, or UNSUPPORTED if some local factor is."""
    w = 1
    for v in E.places:
        e = root_number_local(E, v)
        if e == UNSUPPORTED:
            return UNSUPPORTED
        w *= e
    return w
