"""Finite quadratic spaces over F_2 and their maximal isotropic subspaces.

A quadratic form is stored as a table of +-1 values indexed by the bitset of
the vector, which is cheap because every space here has dimension at most 6.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .f2 import Subspace
from .qlocal import INF, local_class, local_dim, local_hilbert


@dataclass(frozen=True)
class QuadSpace:
    dim: int
    q: tuple[int, ...]
    name: str = field(default="", compare=False)

    @classmethod
    def from_form(cls, dim: int, form, name: str = "") -> "QuadSpace":
        return cls(dim, tuple(form(x) for x in range(1 << dim)), name)

    def b(self, x: int, y: int) -> int:
        return self.q[x ^ y] * self.q[x] * self.q[y]

    def is_quadratic(self) -> bool:
        """q(0) = 1 and the polar form is bilinear."""
        if self.q[0] != 1:
            return False
        n = 1 << self.dim
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.b(x ^ y, z) != self.b(x, z) * self.b(y, z):
                        return False
        return True

    def is_nondegenerate(self) -> bool:
        n = 1 << self.dim
        return all(any(self.b(x, y) == -1 for y in range(n)) for x in range(1, n))

    def is_isotropic(self, w: Subspace) -> bool:
        els = w.elements()
        return all(self.q[x] == 1 for x in els) and all(
            self.b(x, y) == 1 for x in els for y in els
        )

    def is_maximal_isotropic(self, w: Subspace) -> bool:
        return self.is_isotropic(w) and 2 * w.dim == self.dim


def isotropic_subspaces(space: QuadSpace) -> list[Subspace]:
    """Every subspace on which q vanishes identically."""
    seen = {frozenset([0])}
    frontier = [frozenset([0])]
    iso = [x for x in range(1, 1 << space.dim) if space.q[x] == 1]
    while frontier:
        nxt = []
        for w in frontier:
            for x in iso:
                if x in w or any(space.b(x, y) != 1 for y in w):
                    continue
                w2 = w | {x ^ y for y in w}
                if w2 not in seen:
                    seen.add(w2)
                    nxt.append(w2)
        frontier = nxt
    return sorted(
        (Subspace.span(space.dim, w) for w in seen), key=lambda s: (s.dim, s.basis)
    )


def maximal_isotropics(space: QuadSpace) -> list[Subspace]:
    """Isotropic subspaces of the largest dimension present."""
    subs = isotropic_subspaces(space)
    top = max(s.dim for s in subs)
    return [s for s in subs if s.dim == top]


def local_pair_space_dim(v: int) -> int:
    return 2 * local_dim(v)


def pair_bits(c1: int, c2: int, v: int) -> int:
    return c1 | (c2 << local_dim(v))


def split_pair(x: int, v: int) -> tuple[int, int]:
    d = local_dim(v)
    return x & ((1 << d) - 1), x >> d


def local_quadratic_space(v: int, curve=None) -> QuadSpace:
    """The form on H^1(Q_v, E[2]) = (Q_v*/Q_v*^2)^2.

    Without a curve this is q(x1, x2) = (x1, x2)_v.  With a curve the form is
    corrected by characters so that it vanishes on the local Kummer image:
    q(x1, x2) = (x1, x2)_v (x1, -ac)_v (x2, ab)_v, where a, b, c are the
    differences a1-a2, a1-a3, a2-a3 of the roots.  The polar form is unchanged.
    """
    d = local_dim(v)
    if curve is None:
        k1 = k2 = 0
    else:
        k1 = local_class(-curve.alpha * curve.gamma, v)
        k2 = local_class(curve.alpha * curve.beta, v)

    def form(x):
        x1, x2 = x & ((1 << d) - 1), x >> d
        return (
            local_hilbert(x1, x2, v)
            * local_hilbert(x1, k1, v)
            * local_hilbert(x2, k2, v)
        )

    label = "inf" if v == INF else str(v)
    return QuadSpace.from_form(2 * d, form, f"H1(Q_{label}, E[2])")


def m2_space() -> QuadSpace:
    """2x2 matrices over F_2 with the determinant; bits (a, b, c, d) = [[a, b], [c, d]]."""

    def det(x):
        a, b, c, d = (x >> 0) & 1, (x >> 1) & 1, (x >> 2) & 1, (x >> 3) & 1
        return -1 if (a * d + b * c) & 1 else 1

    return QuadSpace.from_form(4, det, "M2(F2)")


def kmr_parity_check(A: Subspace, L: Subspace, H: Subspace, space: QuadSpace) -> bool:
    """dim(A n L) = dim(A n H) mod 2 for maximal isotropics with L n H = 0."""
    for w in (A, L, H):
        if not space.is_maximal_isotropic(w):
            raise ValueError("argument is not a maximal isotropic subspace")
    if L.intersect(H).dim:
        raise ValueError("L and H must intersect trivially")
    return (A.intersect(L).dim - A.intersect(H).dim) % 2 == 0
