"""End-to-end twist search and certificate checking.

A run builds the four forms for a seed curve, walks the lattice points whose
form values are all prime, and for each forms t = kappa q1 q2 q3 q4.  The
first t whose twist has a 2-Selmer group of dimension 2 and whose
tautological point on the (-t)-twist has infinite order is certified.

kappa defaults to 1.  With kappa = "auto" it is the product of a chain of
primes bringing the Selmer group of the twisted structure to zero, with
lambda chosen so that t carries the chosen uniformizer class at each chain
prime.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .arith import crt, legendre
from .constellation import (
    admissibility_check,
    build_system,
    prime_witnesses,
    region_from_system,
    singular_series,
)
from .curve2tor import Curve, point_search
from .errors import ConfigError, NotFound
from .f2 import rank
from .qlocal import SquareClass
from .seltrans import (
    encode_pair,
    sel2_of_twist,
    selmer_reduce,
    tautological_point,
    verify_suitable,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DATA_DIR = Path(__file__).parent / "data"
REGRESSION_CONFIG = DATA_DIR / "regression_config.json"
REGRESSION_CERTIFICATE = DATA_DIR / "regression_certificate.json"


@dataclass
class ExperimentConfig:
    curve: tuple[int, int, int]
    kappa: int | str = 1
    m: int | None = None
    lam: int | None = None
    N: int = 60
    cutoff: int = 1000
    prime_bound: int = 10**4
    max_witnesses: int = 200
    probe_bound: int = 30
    strict: bool = False
    output: str | None = None

    def __post_init__(self):
        self.curve = tuple(int(a) for a in self.curve)
        if len(self.curve) != 3 or len(set(self.curve)) != 3:
            raise ConfigError("curve needs three distinct integer roots")
        if self.kappa != "auto" and (not isinstance(self.kappa, int) or self.kappa <= 0):
            raise ConfigError("kappa must be 'auto' or a positive integer")
        for name in ("N", "cutoff", "prime_bound", "max_witnesses", "probe_bound"):
            if int(getattr(self, name)) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.m is not None and self.m <= 0:
            raise ConfigError("m must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(f"unknown config fields: {sorted(extra)}")
        if "curve" not in data:
            raise ConfigError("config needs a curve")
        try:
            return cls(**data)
        except TypeError as e:
            raise ConfigError(str(e)) from None

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["curve"] = list(self.curve)
        return d


def odd_modulus(E: Curve) -> int:
    out = 1
    for p in E.bad_primes:
        if p != 2:
            out *= p
    return out


@dataclass
class TwistParameters:
    kappa: int
    m: int
    lam: int
    chain: list[int] = field(default_factory=list)
    uniformizers: list[int] = field(default_factory=list)
    moves: list[str] = field(default_factory=list)


def least_admissible_m(a, kappa: int, lam: int, limit: int = 64) -> int:
    for m in range(1, limit + 1):
        try:
            system = build_system(*a, kappa=kappa, m=m, lam=lam)
        except ConfigError:
            continue
        if admissibility_check(system) is None:
            return m
    raise ConfigError(f"no admissible m up to {limit}")


def choose_parameters(E: Curve, config: ExperimentConfig) -> TwistParameters:
    """kappa, m and lambda for the form system.

    m defaults to lcm(8, odd bad primes) under strict and otherwise to the
    least m making the system admissible.
    """
    M = 8 * odd_modulus(E)

    def pick_m(kappa, lam):
        if config.m is not None:
            return config.m
        if config.strict:
            return math.lcm(8, odd_modulus(E))
        return least_admissible_m(config.curve, kappa, lam)

    if config.kappa != "auto":
        kappa = config.kappa
        lam = config.lam
        if lam is None:
            if math.gcd(kappa, M) != 1:
                raise ConfigError(f"kappa must be a unit mod {M}")
            lam = pow(kappa, -1, M)
        return TwistParameters(kappa, pick_m(kappa, lam), lam)
    red = selmer_reduce(E, bound=config.prime_bound)
    if red.final_dim != 0:
        raise NotFound(
            f"Selmer reduction ended at dimension {red.final_dim} (odd parity)",
            config.prime_bound,
        )
    chain = red.chain
    kappa = math.prod(chain.primes)
    rs, ms = [pow(kappa, -1, M)], [M]
    for p, pi in zip(chain.primes, chain.uniformizers):
        # t / pi must be a square at p, and t = kappa * lambda mod p up to the q's
        want = legendre(pi // p, p)
        r = next(r for r in range(1, p) if legendre(r * (kappa // p), p) == want)
        rs.append(r)
        ms.append(p)
    lam, _ = crt(rs, ms)
    if config.lam is not None:
        lam = config.lam
    return TwistParameters(
        kappa, pick_m(kappa, lam), lam, list(chain.primes), list(chain.uniformizers), list(red.moves)
    )


def _frac(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def conclusion_text(dim: int, non_torsion: bool) -> list[str]:
    out = []
    if dim == 2:
        out.append("dim Sel2(E^t) = 2, so rank E^t(Q) = 0")
    if non_torsion:
        out.append("the tautological point on E^-t has infinite order, so rank E^-t(Q) >= 1")
    if dim == 2 and non_torsion:
        out.append(
            "rank E^-t(Q(i)) = rank E^-t(Q) + rank E^t(Q) = rank E^-t(Q) > 0, "
            "so E^t has rank 0 over Q and positive rank over Q(i)"
        )
    return out


def gaussian_probe(E: Curve, t: int, P, bound: int) -> dict:
    """Consistency probe over Q(i); never used as proof.

    The point P on E^-t maps to (-x, i y) on E^t.  The sweep looks for
    points of E^t over Q(i) with rational x up to the given height and
    reports how many came from each of E^t(Q) and i E^-t(Q).
    """
    Et = Curve(t * E.a1, t * E.a2, t * E.a3)
    x, y = P
    # (i y)^2 = -y^2 must equal f_t(-x)
    image_on_curve = -(y * y) == Et.f(-x)
    real_pts = [Q for Q in point_search(Et, bound) if Q[1] != 0]
    minus = Curve(-t * E.a1, -t * E.a2, -t * E.a3)
    imag_pts = [Q for Q in point_search(minus, bound) if Q[1] != 0]
    return {
        "label": "consistency probe",
        "image_on_curve": bool(image_on_curve),
        "bound": bound,
        "nontorsion_rational_x_points_real_y": len(real_pts),
        "nontorsion_rational_x_points_imaginary_y": len(imag_pts),
    }


def _certificate(E, params, system, witness, qs, G, Et_minus, P, non_torsion, config, probe, ss):
    t = params.kappa * math.prod(qs)
    return {
        "schema_version": SCHEMA_VERSION,
        "curve": [E.a1, E.a2, E.a3],
        "T": list(E.places),
        "kappa": {"value": params.kappa, "chain": params.chain,
                  "uniformizers": params.uniformizers, "moves": params.moves},
        "m": params.m,
        "lambda": params.lam,
        "forms": system.describe(),
        "t": {"sign": 1 if t > 0 else -1, "value": str(t),
              "factors": params.chain + list(qs), "q": list(qs)},
        "witness": list(witness),
        "selmer": {"dim": G.dim,
                   "basis": [[a.value, b.value] for a, b in G.pairs()]},
        "point": {"curve": [Et_minus.a1, Et_minus.a2, Et_minus.a3],
                  "x": _frac(P[0]), "y": _frac(P[1])},
        "non_torsion": non_torsion,
        "conclusion": conclusion_text(G.dim, non_torsion),
        "betas": [[p, f"{b.numerator}/{b.denominator}"] for p, b in ss.small_betas],
        "singular_series": {"cutoff": ss.cutoff, "value": ss.value,
                            "relative_change": ss.relative_change},
        "probe": probe,
        "bounds": {k: v for k, v in config.to_dict().items() if k != "output"},
    }


def run_experiment(config: ExperimentConfig) -> dict:
    """Search for a certified twist; returns the certificate as a dict."""
    E = Curve(*config.curve)
    params = choose_parameters(E, config)
    system = build_system(*config.curve, kappa=params.kappa, m=params.m, lam=params.lam,
                          odd_modulus=odd_modulus(E), strict=config.strict)
    bad = admissibility_check(system)
    if bad is not None:
        raise ConfigError(f"form system is inadmissible at {bad}")
    ss = singular_series(system, config.cutoff)
    region = region_from_system(system)
    stats = {"witnesses": 0, "dims": {}}
    for x, y, qs in prime_witnesses(system, region, config.N):
        if stats["witnesses"] >= config.max_witnesses:
            break
        stats["witnesses"] += 1
        c, d = system.c(x, y), system.d(x, y)
        rep = verify_suitable(E, params.kappa, qs, point_data=(c, d, params.m))
        if not (rep.P1 and rep.P2):
            log.info("witness %s fails P1/P2", (x, y))
            continue
        t = rep.t
        G = sel2_of_twist(E, t)
        stats["dims"][G.dim] = stats["dims"].get(G.dim, 0) + 1
        if G.dim != 2:
            log.info("witness %s skipped: dim Sel2 = %d", (x, y), G.dim)
            continue
        if not rep.P4:
            log.info("witness %s skipped: tautological point is torsion", (x, y))
            continue
        Et_minus, P = tautological_point(E, t, c, d, params.m)
        probe = gaussian_probe(E, t, P, config.probe_bound)
        return _certificate(E, params, system, (x, y), qs, G, Et_minus, P, True,
                            config, probe, ss)
    raise NotFound(f"certified twist (stats {stats})", config.N)


def dumps(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, indent=2) + "\n"


@dataclass
class Verdict:
    ok: bool
    reason: str = "pass"

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: dict, probe: bool = False) -> Verdict:
    """Re-derive every recorded number from the curve, parameters and witness."""
    try:
        E = Curve(*cert["curve"])
        kappa = int(cert["kappa"]["value"])
        qs = [int(q) for q in cert["t"]["q"]]
        t = int(cert["t"]["value"])
        wx, wy = (int(v) for v in cert["witness"])
        m, lam = int(cert["m"]), int(cert["lambda"])
        dim = int(cert["selmer"]["dim"])
        basis = [tuple(int(c) for c in pair) for pair in cert["selmer"]["basis"]]
        px, py = Fraction(*cert["point"]["x"]), Fraction(*cert["point"]["y"])
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        return Verdict(False, f"parse: {e}")
    if list(E.places) != list(cert["T"]):
        return Verdict(False, "T")
    rep = verify_suitable(E, kappa, qs)
    if not rep.P2:
        return Verdict(False, "P2")
    if kappa * math.prod(qs) != t or cert["t"]["sign"] != (1 if t > 0 else -1):
        return Verdict(False, "t")
    if not rep.P1:
        return Verdict(False, "P1")
    try:
        system = build_system(E.a1, E.a2, E.a3, kappa=kappa, m=m, lam=lam,
                              odd_modulus=odd_modulus(E))
    except ConfigError as e:
        return Verdict(False, f"forms: {e}")
    if system.describe() != cert["forms"] or list(system.values(wx, wy)) != qs:
        return Verdict(False, "witness")
    G = sel2_of_twist(E, t)
    gens_space = G.space()
    try:
        recorded = {encode_pair(tuple(SquareClass(c) for c in pair), G.generators)
                    for pair in basis}
    except (ValueError, KeyError):
        return Verdict(False, "Sel-recompute")
    if G.dim != dim or len(basis) != dim or not all(x in gens_space for x in recorded) \
            or len(recorded) != dim:
        return Verdict(False, "Sel-recompute")
    if rank(list(recorded)) != dim:
        return Verdict(False, "Sel-recompute")
    c, d = system.c(wx, wy), system.d(wx, wy)
    Et_minus, P = tautological_point(E, t, c, d, m)
    if P != (px, py) or [Et_minus.a1, Et_minus.a2, Et_minus.a3] != cert["point"]["curve"]:
        return Verdict(False, "point")
    if not Et_minus.contains(P):
        return Verdict(False, "point")
    non_torsion = not Et_minus.is_torsion(P)
    if not non_torsion or cert["non_torsion"] is not True:
        return Verdict(False, "torsion")
    if cert["conclusion"] != conclusion_text(G.dim, non_torsion):
        return Verdict(False, "conclusion")
    if probe and not gaussian_probe(E, t, P, 5)["image_on_curve"]:
        return Verdict(False, "probe")
    return Verdict(True)


def load_certificate(path) -> dict:
    return json.loads(Path(path).read_text())
