"""Simultaneous prime values of four affine forms in two variables.

The forms are
    L_i = m^2 k X + a_i m^2 k (m^2 k Y + l) + 1   (i = 1, 2, 3)
    L_4 = m^2 k Y + l
with k = kappa and l = lambda, so that with c = m^2 k X + 1 and d = m^2 k L_4
one has L_i = c + a_i d and k L_1 L_2 L_3 L_4 = d (c + a_1 d)(c + a_2 d)(c + a_3 d) / m^2.

The expected Lambda-weighted count over a region of area ~ C N^2 is
C N^2 prod_p beta_p, where beta_p = (p / (p - 1))^4 * #{(x, y) mod p : no form
vanishes} / p^2.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import factor, is_prime, prime_sieve, primes_up_to
from .errors import ConfigError

Form = tuple[int, int, int]  # (cx, cy, c0): cx X + cy Y + c0


@dataclass(frozen=True)
class LinearFormSystem:
    a: tuple[int, int, int]
    kappa: int
    m: int
    lam: int
    forms: tuple[Form, Form, Form, Form]

    @property
    def scale(self) -> int:
        return self.m * self.m * self.kappa

    def values(self, x: int, y: int) -> tuple[int, int, int, int]:
        return tuple(cx * x + cy * y + c0 for cx, cy, c0 in self.forms)

    def c(self, x: int, y: int) -> int:
        return self.scale * x + 1

    def d(self, x: int, y: int) -> int:
        return self.scale * (self.scale * y + self.lam)

    def t(self, x: int, y: int) -> int:
        out = self.kappa
        for v in self.values(x, y):
            out *= v
        return out

    def describe(self) -> dict:
        return {f"L{i + 1}": list(f) for i, f in enumerate(self.forms)}


def build_system(a1, a2, a3, kappa: int = 1, m: int = 6, lam: int = 1,
                 odd_modulus: int | None = None, strict: bool = False) -> LinearFormSystem:
    """The four forms, with the congruence checks on (kappa, m, lambda).

    odd_modulus is the product of the odd bad primes (defaults to the one of
    the curve with these roots).  lambda * kappa must be 1 mod 8 * odd_modulus
    and lambda coprime to kappa.  With strict, m must also be divisible by
    lcm(8, odd_modulus).
    """
    a = (int(a1), int(a2), int(a3))
    if len(set(a)) != 3:
        raise ConfigError("roots must be distinct")
    if kappa == 0 or m == 0:
        raise ConfigError("kappa and m must be nonzero")
    if odd_modulus is None:
        from .curve2tor import Curve

        odd_modulus = 1
        for p in Curve(*a).bad_primes:
            if p != 2:
                odd_modulus *= p
    M = 8 * odd_modulus
    if (lam * kappa - 1) % M:
        raise ConfigError(f"lambda * kappa must be 1 mod {M}")
    if math.gcd(lam, kappa) != 1:
        raise ConfigError("lambda must be coprime to kappa")
    if strict and m % math.lcm(8, odd_modulus):
        raise ConfigError(f"m must be divisible by {math.lcm(8, odd_modulus)}")
    s = m * m * kappa
    forms = tuple((s, ai * s * s, ai * s * lam + 1) for ai in a) + ((0, s, lam),)
    for i in range(4):
        for j in range(i):
            (x1, y1, _), (x2, y2, _) = forms[i], forms[j]
            if x1 * y2 - x2 * y1 == 0:
                raise ConfigError(f"forms L{j + 1} and L{i + 1} are dependent")
    return LinearFormSystem(a, kappa, m, lam, forms)


# --- local densities -------------------------------------------------------

def _count_nonvanishing_enum(system: LinearFormSystem, p: int) -> int:
    g = np.arange(p, dtype=np.int64)
    X, Y = np.meshgrid(g, g, indexing="ij")
    ok = np.ones((p, p), dtype=bool)
    for cx, cy, c0 in system.forms:
        ok &= (X * (cx % p) + Y * (cy % p) + (c0 % p)) % p != 0
    return int(ok.sum())


def _solution_count(rows, p: int) -> int:
    """Number of (x, y) mod p solving cx x + cy y + c0 = 0 for all rows."""
    m = [[r[0] % p, r[1] % p, (-r[2]) % p] for r in rows]
    rank, col = 0, 0
    for col in range(2):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], -1, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(u - f * w) % p for u, w in zip(m[i], m[rank])]
        rank += 1
    if any(r[0] == 0 and r[1] == 0 and r[2] for r in m):
        return 0
    return p ** (2 - rank)


def _count_nonvanishing_lines(system: LinearFormSystem, p: int) -> int:
    # inclusion-exclusion over the zero sets of the four forms
    from itertools import combinations

    union = 0
    for k in range(1, 5):
        for sub in combinations(system.forms, k):
            union += (-1) ** (k + 1) * _solution_count(sub, p)
    return p * p - union


def beta_p(system: LinearFormSystem, p: int, method: str = "auto") -> Fraction:
    if method == "enum" or (method == "auto" and p <= 200):
        count = _count_nonvanishing_enum(system, p)
    else:
        count = _count_nonvanishing_lines(system, p)
    return Fraction(p, p - 1) ** 4 * Fraction(count, p * p)


def admissibility_check(system: LinearFormSystem, p_bound: int = 100) -> int | None:
    """None if every beta_p > 0, else the least prime with beta_p = 0.

    Beyond p_bound only a form vanishing identically mod p can kill beta_p,
    since four lines leave at least p^2 - 4p > 0 points for p >= 5.
    """
    cands = set(primes_up_to(max(p_bound, 5)))
    for f in system.forms:
        g = math.gcd(*f)
        if g > 1:
            cands |= set(factor(g))
    for p in sorted(cands):
        if beta_p(system, p) == 0:
            return p
    return None


@dataclass
class SingularSeries:
    value: float
    cutoff: int
    value_at_tenth: float
    relative_change: float
    small_betas: list[tuple[int, Fraction]]


def singular_series(system: LinearFormSystem, cutoff: int = 10**4,
                    report_upto: int = 50) -> SingularSeries:
    if admissibility_check(system) is not None:
        raise ConfigError("system is not admissible")
    logs, small = [], []
    tenth_log = None
    for p in primes_up_to(cutoff):
        b = beta_p(system, p)
        if p <= report_upto:
            small.append((p, b))
        if tenth_log is None and p > cutoff // 10:
            tenth_log = math.fsum(logs)
        logs.append(math.log(b))
    total = math.fsum(logs)
    if tenth_log is None:
        tenth_log = total
    value, tenth = math.exp(total), math.exp(tenth_log)
    return SingularSeries(value, cutoff, tenth, abs(value / tenth - 1), small)


# --- regions ---------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Intersection of open half-planes a x + b y + c > 0."""

    halfplanes: tuple[tuple[int, int, int], ...]

    def contains(self, x, y) -> bool:
        return all(a * x + b * y + c > 0 for a, b, c in self.halfplanes)

    def homogeneous(self) -> "Region":
        """Drop constant terms; a constant half-plane is kept as all or nothing."""
        out = []
        for a, b, c in self.halfplanes:
            if a or b:
                out.append((a, b, 0))
            elif c <= 0:
                return Region(((0, 0, 0),))
        return Region(tuple(out))


def region_from_system(system: LinearFormSystem) -> Region:
    """Every form positive (kappa L_4 > 0 for the last one)."""
    hp = list(system.forms[:3])
    cx, cy, c0 = system.forms[3]
    sgn = 1 if system.kappa > 0 else -1
    hp.append((sgn * cx, sgn * cy, sgn * c0))
    return Region(tuple(hp))


def _clip(poly, a, b, c):
    out = []
    n = len(poly)
    for i in range(n):
        P, Q = poly[i], poly[(i + 1) % n]
        fp = a * P[0] + b * P[1] + c
        fq = a * Q[0] + b * Q[1] + c
        if fp >= 0:
            out.append(P)
        if (fp > 0 and fq < 0) or (fp < 0 and fq > 0):
            s = fp / (fp - fq)
            out.append((P[0] + s * (Q[0] - P[0]), P[1] + s * (Q[1] - P[1])))
    return out


def region_volume(region: Region, method: str = "exact", samples: int = 200000,
                  seed: int = 0) -> tuple[float, float]:
    """(C, standard error) with area(region n [-H, H]^2) ~ C H^2.

    Constant terms are dropped first; they only move the area by O(H).
    """
    hom = region.homogeneous()
    if method == "exact":
        one = Fraction(1)
        poly = [(-one, -one), (one, -one), (one, one), (-one, one)]
        for a, b, c in hom.halfplanes:
            if not (a or b):
                poly = []
                break
            poly = _clip(poly, Fraction(a), Fraction(b), Fraction(c))
            if not poly:
                break
        area = Fraction(0)
        for i in range(len(poly)):
            (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % len(poly)]
            area += x1 * y2 - x2 * y1
        area = abs(area) / 2
        if area == 0:
            raise ValueError("region has empty interior")
        return float(area), 0.0
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        x, y = rng.uniform(-1, 1), rng.uniform(-1, 1)
        hits += hom.contains(x, y)
    frac = hits / samples
    return 4 * frac, 4 * math.sqrt(frac * (1 - frac) / samples)


# --- counting --------------------------------------------------------------

@dataclass
class ConstellationReport:
    N: int
    cutoff: int
    volume: float
    singular_series: float
    series_relative_change: float
    small_betas: list[tuple[int, Fraction]]
    weighted_count: float
    witness_count: int
    prediction: float
    ratio: float
    witnesses: list[tuple[int, int]] = field(default_factory=list)
    # witnesses with a negative form value: the region does not force positivity
    sign_mismatches: int = 0


def _strip_primality(vals: np.ndarray, sieve: np.ndarray | None) -> np.ndarray:
    if sieve is not None:
        return sieve[vals]
    return np.array([is_prime(int(v)) for v in vals], dtype=bool)


def prime_witnesses(system: LinearFormSystem, region: Region, N: int):
    """Yield (x, y, values) with every form prime inside region n [-N, N]^2.

    Points are visited in order of increasing x, then y.
    """
    corners = [system.values(x, y) for x in (-N, N) for y in (-N, N)]
    vmax = max(abs(v) for vs in corners for v in vs)
    sieve = prime_sieve(vmax) if vmax <= 5 * 10**7 else None
    ys = np.arange(-N, N + 1, dtype=np.int64)
    big = vmax >= 2**62
    for x in range(-N, N + 1):
        ok = np.ones(ys.shape, dtype=bool)
        for a, b, c in region.halfplanes:
            ok &= (a * x + c) + b * ys.astype(object) > 0 if big else (a * x + c) + b * ys > 0
        cand = ys[ok]
        for cx, cy, c0 in system.forms:
            if not len(cand):
                break
            if big:
                vals = np.array([cx * x + cy * int(y) + c0 for y in cand], dtype=object)
                keep = np.array([is_prime(abs(int(v))) for v in vals], dtype=bool)
            else:
                vals = np.abs(cx * x + cy * cand + c0)
                keep = _strip_primality(vals, sieve)
            cand = cand[keep]
        for y in cand:
            yield x, int(y), system.values(x, int(y))


def count_and_compare(system: LinearFormSystem, region: Region | None, N: int,
                      cutoff: int = 10**4) -> ConstellationReport:
    region = region or region_from_system(system)
    vol, _ = region_volume(region)
    if admissibility_check(system) is not None:
        return ConstellationReport(N, cutoff, vol, 0.0, 0.0, [], 0.0, 0, 0.0, 0.0, [])
    S = singular_series(system, cutoff)
    terms, witnesses, mismatches = [], [], 0
    for x, y, vals in prime_witnesses(system, region, N):
        mismatches += any(v < 0 for v in vals)
        terms.append(math.prod(math.log(abs(v)) for v in vals))
        witnesses.append((x, y))
    # fsum is correctly rounded, so the total does not depend on the order
    total = math.fsum(terms)
    pred = vol * N * N * S.value
    return ConstellationReport(
        N, cutoff, vol, S.value, S.relative_change, S.small_betas,
        total, len(witnesses), pred, total / pred if pred else 0.0, witnesses, mismatches,
    )
