"""Selmer structures and Selmer groups as F_2 kernels.

Global classes live in the F_2 space spanned by -1 and a finite list of primes
(the "generators").  A pair of classes is the bitset c1 | c2 << n where n is
the number of generators.  Each local condition is imposed through the
functionals that annihilate it, pulled back along restriction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from ..curve2tor import Curve, local_image, twist
from ..f2 import Subspace, annihilator, kernel, parity
from ..qlocal import INF, SquareClass, local_class, local_dim


def unramified_subspace(v: int) -> Subspace:
    """Pairs of unit classes at an odd prime v."""
    if v in (INF, 2):
        raise ValueError("unramified classes are only used at odd primes")
    return Subspace.span(4, [0b0001, 0b0100])


@lru_cache(maxsize=4096)
def _cached_image(E: Curve, v: int) -> Subspace:
    return local_image(E, v).space


@dataclass
class SelmerStructure:
    """Local conditions of a Selmer structure for E[2].

    Places of bad reduction default to the Kummer image, every other prime
    to the unramified classes.  ``conditions`` overrides individual places.
    """

    curve: Curve
    conditions: dict[int, Subspace] = field(default_factory=dict)

    def condition(self, v: int) -> Subspace:
        if v in self.conditions:
            return self.conditions[v]
        if v in self.curve.places:
            return _cached_image(self.curve, v)
        return unramified_subspace(v)

    def places(self) -> list[int]:
        return sorted(set(self.curve.places) | set(self.conditions))


@dataclass(frozen=True)
class SelmerGroup:
    generators: tuple[int, ...]
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return len(self.generators)

    def decode(self, x: int) -> tuple[SquareClass, SquareClass]:
        return decode_pair(x, self.generators)

    def pairs(self) -> list[tuple[SquareClass, SquareClass]]:
        return [self.decode(x) for x in self.basis]

    def space(self) -> Subspace:
        return Subspace(2 * self.n, self.basis)


def generators_for(structure: SelmerStructure, extra=()) -> tuple[int, ...]:
    primes = {v for v in structure.places() if v != INF} | {int(p) for p in extra}
    return (-1,) + tuple(sorted(primes))


def encode_class(c, gens) -> int:
    c = SquareClass.of(c)
    out = int(c.sign < 0)
    idx = {g: i for i, g in enumerate(gens)}
    for q in c.support:
        if q not in idx:
            raise ValueError(f"class {c.value} is not supported on the generators")
        out |= 1 << idx[q]
    return out


def encode_pair(pair, gens) -> int:
    return encode_class(pair[0], gens) | (encode_class(pair[1], gens) << len(gens))


def decode_class(x: int, gens) -> SquareClass:
    v = 1
    for i, g in enumerate(gens):
        if (x >> i) & 1:
            v *= g
    return SquareClass(v)


def decode_pair(x: int, gens) -> tuple[SquareClass, SquareClass]:
    n = len(gens)
    return decode_class(x & ((1 << n) - 1), gens), decode_class(x >> n, gens)


def restriction_map(gens, v: int):
    """Function sending a global pair bitset to its local pair bitset at v."""
    n, d = len(gens), local_dim(v)
    loc = [local_class(g, v) for g in gens]

    def res(x: int) -> int:
        c1 = c2 = 0
        for i in range(n):
            if (x >> i) & 1:
                c1 ^= loc[i]
            if (x >> (n + i)) & 1:
                c2 ^= loc[i]
        return c1 | (c2 << d)

    return res


def restriction_rows(gens, v: int, cond: Subspace) -> list[int]:
    """Global functionals whose common kernel is res_v^{-1}(cond)."""
    n = len(gens)
    res = restriction_map(gens, v)
    images = [res(1 << j) for j in range(2 * n)]
    rows = []
    for f in annihilator(list(cond.basis), cond.ambient):
        r = 0
        for j, im in enumerate(images):
            if parity(f & im):
                r |= 1 << j
        if r:
            rows.append(r)
    return rows


def compute_selmer(structure: SelmerStructure, extra_support=()) -> SelmerGroup:
    """Selmer group of the structure, in echelon form.

    Classes are allowed to be ramified at -1, the bad primes, the primes with
    explicit conditions and extra_support; at extra primes without an
    explicit condition the unramified condition applies, so enlarging the
    support never changes the group.
    """
    gens = generators_for(structure, extra_support)
    rows = []
    for v in sorted({INF} | set(gens[1:])):
        rows += restriction_rows(gens, v, structure.condition(v))
    return SelmerGroup(gens, tuple(kernel(rows, 2 * len(gens))))


def baseline_structure(E: Curve) -> SelmerStructure:
    return SelmerStructure(E)


def selmer2(E: Curve) -> SelmerGroup:
    return compute_selmer(baseline_structure(E))


def sel2_of_twist(E: Curve, d) -> SelmerGroup:
    """2-Selmer group of the quadratic twist by d, in the twist's own coordinates."""
    return selmer2(twist(E, d))


def restrict_group(G: SelmerGroup, v: int) -> Subspace:
    res = restriction_map(G.generators, v)
    return Subspace.span(2 * local_dim(v), [res(x) for x in G.basis])
