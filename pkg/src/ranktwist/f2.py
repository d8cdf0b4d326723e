"""Linear algebra over F_2 with vectors stored as int bitsets."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def echelon(vectors) -> list[int]:
    """Reduced echelon basis of the span, sorted by decreasing leading bit."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            # clear v's leading bit from the rows already kept
            top = v.bit_length() - 1
            basis = [b ^ v if (b >> top) & 1 else b for b in basis]
            basis.append(v)
    basis.sort(reverse=True)
    return basis


def rank(vectors) -> int:
    return len(echelon(vectors))


def reduce(v: int, basis: list[int]) -> int:
    """Remainder of v modulo an echelon basis."""
    for b in basis:
        v = min(v, v ^ b)
    return v


def kernel(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x in F_2^ncols : parity(row & x) = 0 for every row}."""
    piv: dict[int, int] = {}
    for r in echelon(rows):
        piv[r.bit_length() - 1] = r
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = 1 << f
        for c, r in piv.items():
            # row r has pivot c; set bit c so that r.x = 0
            if parity(r & x):
                x |= 1 << c
        out.append(x)
    return echelon(out)


def annihilator(basis: list[int], dim: int) -> list[int]:
    """Functionals (as bitsets, paired by parity of AND) vanishing on the span."""
    return kernel(list(basis), dim)


@dataclass(frozen=True)
class Subspace:
    ambient: int
    basis: tuple[int, ...]

    @classmethod
    def span(cls, ambient: int, vectors) -> "Subspace":
        vs = [int(v) for v in vectors]
        if any(v >> ambient for v in vs):
            raise ValueError("vector outside ambient space")
        return cls(ambient, tuple(echelon(vs)))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.span(ambient, [1 << i for i in range(ambient)])

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return reduce(v, list(self.basis)) == 0

    def elements(self) -> list[int]:
        out = []
        for bits in product((0, 1), repeat=self.dim):
            v = 0
            for b, g in zip(bits, self.basis):
                if b:
                    v ^= g
            out.append(v)
        return sorted(out)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient, self.basis + other.basis)

    def intersect(self, other: "Subspace") -> "Subspace":
        # a in A with a in B: solve sum x_i a_i + sum y_j b_j = 0
        A, B = list(self.basis), list(other.basis)
        n = len(A) + len(B)
        if not A or not B:
            return Subspace.zero(self.ambient)
        cols = A + B
        rows = []
        for bit in range(self.ambient):
            r = 0
            for j, c in enumerate(cols):
                if (c >> bit) & 1:
                    r |= 1 << j
            if r:
                rows.append(r)
        out = []
        for sol in kernel(rows, n):
            v = 0
            for i, a in enumerate(A):
                if (sol >> i) & 1:
                    v ^= a
            out.append(v)
        return Subspace.span(self.ambient, out)

    def issubset(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def image(self, f) -> list[int]:
        return echelon(f(b) for b in self.basis)
