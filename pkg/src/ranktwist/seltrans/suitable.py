"""Checks P1-P4 for t = kappa q1 q2 q3 q4, the real-place sign tables, and the
predicted Selmer cascade q1 -> q2 -> q3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from ..arith import is_prime
from ..curve2tor import Curve
from ..errors import InvariantError
from ..f2 import echelon, kernel
from ..qlocal import SquareClass, hilbert_symbol, local_class

TAUS = ("tau1", "tau2", "tau3", "tau4", "tau5", "tau6")


@dataclass(frozen=True)
class SignTable:
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    signs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ValueError("labels must be unique")
        if len(self.signs) != len(self.rows) or any(
            len(r) != len(self.cols) or any(s not in (1, -1) for s in r) for r in self.signs
        ):
            raise ValueError("every entry must be +1 or -1")

    def row(self, label: str) -> tuple[int, ...]:
        return self.signs[self.rows.index(label)]


def _table(rows, text):
    return SignTable(
        tuple(rows), TAUS, tuple(tuple(1 if c == "+" else -1 for c in r.split()) for r in text)
    )


# signs of the basis classes z1..z12 at the six real places
Z_TABLE = _table(
    [f"z{i}" for i in range(1, 13)],
    [
        "- + + + + +",
        "+ + + + + +",
        "+ + + + + +",
        "+ - + + + +",
        "+ + - + + +",
        "+ + + + + +",
        "+ + + + + +",
        "+ + + - + +",
        "+ + + + - +",
        "+ + + + + +",
        "+ + + + + +",
        "+ + + + + -",
    ],
)

# signs of the forms L1..L3 (hence of q1..q3) at the same places
L_TABLE = _table(
    ["L1", "L2", "L3"],
    ["- - + + + +", "- - - - + +", "+ + - + - -"],
)

# nontrivial real Kummer image class at each place, as (sign x1, sign x2)
IM_DELTA = ((-1, 1), (1, -1), (-1, 1), (1, -1), (-1, 1), (1, -1))

# root orderings at tau1..tau6, listed as indices of (a1, a2, a3) in increasing order
TAU_ORDERINGS = ((1, 0, 2), (0, 1, 2), (1, 2, 0), (0, 2, 1), (1, 0, 2), (0, 1, 2))


def required_pattern() -> dict[tuple[int, int], int]:
    """(i, j) -> required product of (z_i, q_j) over T', for the constrained pairs."""
    minus = {1: (1, 4), 2: (5, 8), 3: (9, 12)}
    start = {1: 1, 2: 5, 3: 9}
    return {
        (i, j): (-1 if i in minus[j] else 1)
        for j in (1, 2, 3)
        for i in range(start[j], 13)
    }


def sign_table_products(z_table: SignTable, q_table: SignTable) -> list[list[int]]:
    """prod over the columns of the real Hilbert symbol of each (row z, row q)."""
    if z_table.cols != q_table.cols:
        raise ValueError("tables must share their columns")
    out = []
    for zr in z_table.signs:
        row = []
        for qr in q_table.signs:
            s = 1
            for a, b in zip(zr, qr):
                if a < 0 and b < 0:
                    s = -s
            row.append(s)
        out.append(row)
    return out


def real_image_pattern(ordering) -> tuple[int, int]:
    """Signs of (x - a1, x - a2) for the nontrivial real Kummer class.

    ordering lists the root indices in increasing order at the real place.
    Points with x between the two smallest roots give the nontrivial class.
    """
    lo, mid, hi = ordering
    # x sits just above the smallest root: x - a_i > 0 iff a_i is the smallest
    sign = lambda i: 1 if i == lo else -1
    return sign(0), sign(1)


@dataclass
class CascadeResult:
    dims: list[int]
    final_dim: int | None
    flagged: list[int] = field(default_factory=list)


def cascade_predict(products, start_dim: int = 6) -> CascadeResult:
    """Replay the Selmer changes at q1, q2, q3 from the symbol products.

    products[i][j] is the product over T' of (z_{i+1}, q_{j+1})_v (entries
    that are never used may be None).  The restriction of (z_{2k-1}, z_{2k})
    at q_j is (eps^a, eps^b) with a, b marking products equal to -1.
    """
    if start_dim != 6 or len(products) != 12:
        raise ValueError("the cascade starts from the six pairs (z1, z2), ..., (z11, z12)")
    current = [1 << k for k in range(6)]  # subspace of F_2^6 in the pair basis
    dims, flagged = [6], []
    for j in range(3):
        def res(vec):
            out = 0
            for k in range(6):
                if (vec >> k) & 1:
                    a, b = products[2 * k][j], products[2 * k + 1][j]
                    if a is None or b is None:
                        raise InvariantError(f"missing product for pair {k + 1} at q{j + 1}")
                    out ^= int(a == -1) | (int(b == -1) << 1)
            return out

        images = [res(v) for v in current]
        r = len(echelon(images))
        if r == 2:
            # kernel of the restriction inside the current group
            rows = []
            for bit in range(2):
                row = 0
                for idx, im in enumerate(images):
                    if (im >> bit) & 1:
                        row |= 1 << idx
                rows.append(row)
            ker = kernel(rows, len(current))
            new = []
            for comb in ker:
                v = 0
                for idx, g in enumerate(current):
                    if (comb >> idx) & 1:
                        v ^= g
                new.append(v)
            current = echelon(new)
            dims.append(len(current))
        else:
            flagged.append(j + 1)
            dims.append(len(current))
    final = 2 + dims[-1] if not flagged else None
    return CascadeResult(dims, final, flagged)


def table_products_full() -> list[list[int]]:
    return sign_table_products(Z_TABLE, L_TABLE)


@dataclass
class SuitabilityReport:
    t: int
    P1: bool
    P2: bool
    P3: bool | None
    P4: bool | None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(x is not False for x in (self.P1, self.P2, self.P3, self.P4))


def symbol_products(basis, qs, places) -> list[list[int]]:
    """prod_{v in places} (z_i, q_j)_v for the 12 classes of the basis pairs."""
    zs = [SquareClass.of(c) for pair in basis for c in pair]
    out = []
    for z in zs:
        row = []
        for q in qs[:3]:
            s = 1
            for v in places:
                s *= hilbert_symbol(z.value, q, v)
            row.append(s)
        out.append(row)
    return out


def tautological_point(E: Curve, t: int, c: int, d: int, m: int):
    """Point (t c / d, t^2 m / d^2) on y^2 = (x + t a1)(x + t a2)(x + t a3)."""
    Et = Curve(-t * E.a1, -t * E.a2, -t * E.a3)
    return Et, (Fraction(t * c, d), Fraction(t * t * m, d * d))


def verify_suitable(E: Curve, kappa: int, qs, basis=None, point_data=None) -> SuitabilityReport:
    """P1-P4 verdicts.  P3 needs a basis of six pairs and P4 needs (c, d, m)."""
    qs = [int(q) for q in qs]
    t = int(kappa)
    for q in qs:
        t *= q
    places = list(E.places)
    kappa_primes = SquareClass.of(kappa).support if kappa != 1 else frozenset()
    t_prime = sorted(set(places) | set(kappa_primes))
    details = {}
    p1_fail = [v for v in places if local_class(t, v) != 0]
    details["P1_failures"] = p1_fail
    P1 = not p1_fail
    P2 = (
        len(qs) == 4
        and all(is_prime(abs(q)) for q in qs)
        and len({abs(q) for q in qs}) == 4
        and all(abs(q) not in t_prime for q in qs)
        and all(gcd(abs(q), abs(kappa)) == 1 for q in qs)
    )
    P3 = None
    if basis is not None:
        prods = symbol_products(basis, qs, t_prime)
        details["products"] = prods
        pat = required_pattern()
        P3 = all(prods[i - 1][j - 1] == s for (i, j), s in pat.items())
    P4 = None
    if point_data is not None:
        c, d, m = point_data
        Et, P = tautological_point(E, t, c, d, m)
        P4 = Et.contains(P) and not Et.is_torsion(P)
        details["point"] = P
    return SuitabilityReport(t, P1, P2, P3, P4, details)
