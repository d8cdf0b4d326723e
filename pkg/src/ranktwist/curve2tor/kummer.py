"""The 2-descent Kummer map and its local images.

A point P = (x, y) goes to the pair of square classes (x - a1, x - a2); the
2-torsion points need the usual replacements.  Locally the image of
E(Q_v)/2E(Q_v) is a subspace of the pair space (bitset c1 | c2 << d_v), found
by a p-adic search over the x-line: on a ball x0 + p^j Z_p the class of
x - a_i is frozen once j exceeds v(x0 - a_i) by 1 (by 3 when p = 2), and the
ball contributes a point exactly when the product of the three classes is
trivial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import valuation
from ..f2 import Subspace, echelon
from ..qlocal import INF, SquareClass, local_class, local_dim
from .curve import Curve


def kummer_of_point(E: Curve, P) -> tuple[SquareClass, SquareClass]:
    if P is None:
        return SquareClass(1), SquareClass(1)
    x = Fraction(P[0])
    a1, a2, _ = E.roots
    if x == a1:
        return SquareClass.of(E.alpha * E.beta), SquareClass.of(E.alpha)
    if x == a2:
        return SquareClass.of(-E.alpha), SquareClass.of(-E.alpha * E.gamma)
    return SquareClass.of(x - a1), SquareClass.of(x - a2)


def torsion_images(E: Curve) -> list[tuple[SquareClass, SquareClass]]:
    return [kummer_of_point(E, P) for P in E.two_torsion()]


def local_pair(pair, v: int) -> int:
    c1, c2 = pair
    return local_class(c1, v) | (local_class(c2, v) << local_dim(v))


@dataclass(frozen=True)
class LocalImage:
    place: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def __contains__(self, x: int) -> bool:
        return x in self.space


def expected_image_dim(v: int) -> int:
    # dim E(Q_v)/2 = 2 + (1 if v = 2) for full 2-torsion, 1 at the real place
    return 1 if v == INF else 3 if v == 2 else 2


def local_image(E: Curve, v: int, method: str = "auto") -> LocalImage:
    """Image of E(Q_v)/2E(Q_v) in the local pair space.

    method "auto" uses the span of the 2-torsion images at odd primes when it
    already has the full dimension 2, and otherwise searches.
    """
    tors = [local_pair(c, v) for c in torsion_images(E)]
    d = expected_image_dim(v)
    if method == "auto" and v not in (INF, 2):
        span = echelon(tors)
        if len(span) == d:
            return LocalImage(v, Subspace(2 * local_dim(v), tuple(span)))
    if v == INF:
        found = set(tors) | set(_real_points(E))
    else:
        found = set(tors) | _padic_points(E, v)
    sp = Subspace.span(2 * local_dim(v), found)
    if sp.dim != d:
        raise ArithmeticError(f"local image at {v} has dim {sp.dim}, expected {d}")
    return LocalImage(v, sp)


def _real_points(E: Curve) -> list[int]:
    """Pair bitsets of sample real points in each interval where f > 0."""
    r = sorted(E.roots)
    samples = [Fraction(r[0] + r[1], 2), Fraction(r[2] + 1)]
    out = []
    for x in samples:
        assert E.f(x) > 0
        out.append(local_pair((SquareClass.of(x - E.a1), SquareClass.of(x - E.a2)), INF))
    return out


def _padic_points(E: Curve, p: int) -> set[int]:
    # For p = 2 work with X = 4x so that x with v(x) >= -2 is covered; points
    # with smaller valuation land in the trivial class.
    scale = 4 if p == 2 else 1
    roots = [scale * a for a in E.roots]
    prec = 3 if p == 2 else 1
    d = local_dim(p)
    spread = max(valuation(a - b, p) for a in roots for b in roots if a != b)
    cap = spread + 2 * prec + 3
    found = {0}
    stack = [(0, 0)]
    while stack:
        x0, j = stack.pop()
        classes = []
        for a in roots:
            diff = x0 - a
            if diff != 0 and valuation(diff, p) + prec <= j:
                classes.append(local_class(diff, p))
            else:
                break
        if len(classes) == 3:
            if classes[0] ^ classes[1] ^ classes[2] == 0:
                found.add(classes[0] | (classes[1] << d))
            continue
        if j >= cap:
            continue
        step = p**j
        for r in range(p):
            stack.append((x0 + r * step, j + 1))
    return found


def local_membership(E: Curve, pair, v: int) -> bool:
    return local_pair(pair, v) in local_image(E, v)

