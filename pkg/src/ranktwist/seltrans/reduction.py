"""Driving a Selmer group to zero by adjoining twisted primes.

The loop in selmer_reduce looks at the current group V.  If some prime p has
two elements of V restricting independently into the unramified classes at
p, adjoining p drops the dimension by 2.  If no such prime exists, V is killed
by one of the projections (x1, x2) -> x1, x2 or x1 x2; a prime making a chosen
coordinate and a companion class non-residues is adjoined first (dimension
unchanged) and the loop then finds an independent prime.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..arith import is_prime, legendre
from ..curve2tor import Curve
from ..errors import InvariantError, NotFound
from ..f2 import Subspace, annihilator, echelon, kernel, parity
from ..qlocal import SquareClass, find_prime, least_nonresidue
from .structures import compute_selmer, decode_class, restriction_map
from .transition import TransitionChain, transition_step, twisted_condition


@dataclass(frozen=True)
class Degeneracy:
    kind: str  # "nondegenerate", "T1", "T2" or "T1+T2"
    witness: int | None = None


def _projections(V):
    return {
        "T1": [a for a, _ in V],
        "T2": [b for _, b in V],
        "T1+T2": [a * b for a, b in V],
    }


def _frob(c: SquareClass, p: int) -> int:
    return int(legendre(c.value, p) == -1)


def classify_degenerate(V, exclude=(), bound: int = 10**4) -> Degeneracy:
    """Find a prime where V restricts to the unramified classes with rank 2.

    V is a list of pairs of square classes (a basis).  When one of the three
    projections kills V no such prime exists and the projection is reported.
    """
    V = [(SquareClass.of(a), SquareClass.of(b)) for a, b in V]
    for kind, vals in _projections(V).items():
        if all(c.is_trivial() for c in vals):
            return Degeneracy(kind)
    bad = {2} | {int(e) for e in exclude}
    for a, b in V:
        bad |= a.support | b.support
    p = 3
    for _ in range(bound):
        if p not in bad and is_prime(p):
            rows = [_frob(a, p) | (_frob(b, p) << 1) for a, b in V]
            if len(echelon(rows)) == 2:
                return Degeneracy("nondegenerate", p)
        p += 2
    raise NotFound("classify_degenerate", bound)


def independent_differences(E: Curve) -> bool:
    """Whether -1, alpha, beta, gamma are independent in Q*/Q*^2."""
    return len(_independent([SquareClass.of(c) for c in (-1, E.alpha, E.beta, E.gamma)])) == 4


HELPERS = {
    "T1": lambda E: E.alpha * E.beta,
    "T2": lambda E: -E.alpha * E.gamma,
    "T1+T2": lambda E: E.beta * E.gamma,
}


@dataclass
class ReductionResult:
    chain: TransitionChain
    dims: list[int]
    moves: list[str] = field(default_factory=list)

    @property
    def final_dim(self) -> int:
        return self.dims[-1]


def _pick_uniformizer(chain: TransitionChain, p: int) -> int:
    """Uniformizer at p whose twisted condition differs from the relaxed image."""
    ext = chain.extend(p, p)
    relaxed = compute_selmer(ext.structure(len(chain.primes), relax_next=True))
    res = restriction_map(relaxed.generators, p)
    A = Subspace.span(4, [res(x) for x in relaxed.basis])
    for pi in (p, p * least_nonresidue(p)):
        if twisted_condition(chain.curve, p, pi) != A:
            return pi
    raise InvariantError("both uniformizers coincide with the relaxed image")


def selmer_reduce(
    E: Curve, exclusions=(), bound: int = 10**4, chain: TransitionChain | None = None
) -> ReductionResult:
    """Extend a chain until its Selmer group is trivial (dim <= 1 for odd parity)."""
    chain = chain or TransitionChain(E, (), ())
    G = chain.selmer(len(chain.primes))
    dims, moves = [G.dim], []
    target = G.dim % 2
    excl = set(E.places) | {int(e) for e in exclusions}
    for _ in range(4 * G.dim + 4):
        if G.dim <= target:
            return ReductionResult(chain, dims, moves)
        used = excl | set(chain.primes)
        V = G.pairs()
        deg = classify_degenerate(V, exclude=used, bound=bound)
        if deg.kind == "nondegenerate":
            p, move = deg.witness, "drop"
            pi = p
        else:
            # least element outside the kernel of the complementary slot
            key = {"T1": 1, "T2": 0, "T1+T2": 1}[deg.kind]
            x = next(pair[key] for pair in V if not pair[key].is_trivial())
            h = HELPERS[deg.kind](E)
            if SquareClass.of(h).is_trivial() or (x * h).is_trivial():
                raise ValueError(
                    f"no prime makes {x.value} and {h} both non-residues; "
                    "-1, alpha, beta, gamma must be independent mod squares"
                )
            p = find_prime(
                exclude=used | {2},
                residue_conditions=[(x.value, -1), (h, -1)],
                bound=bound,
            )
            pi, move = p, "prepare"
        chain = chain.extend(p, pi)
        step = transition_step(chain, len(chain.primes) - 1)
        if move == "drop" and step.case != "drop":
            raise InvariantError(f"witness {p} did not drop the dimension")
        if move == "prepare" and step.case != "stable":
            raise InvariantError(f"preparation prime {p} changed the dimension")
        G = chain.selmer(len(chain.primes))
        if G.dim != step.dim_after:
            raise InvariantError("Selmer recomputation disagrees with the step")
        dims.append(G.dim)
        moves.append(f"{move}:{p}")
    raise InvariantError("reduction loop did not terminate")


def d_spaces(chain: TransitionChain, r: int) -> tuple[Subspace, Subspace, Subspace]:
    """The three spaces of classes x with (x, x), (x, 1), (1, x) in L_{r} at p_1..p_r.

    Classes are supported on -1, the bad primes and p_1..p_r; the generator
    order is that of ``d_generators``.
    """
    gens = d_generators(chain, r)
    n = len(gens)
    out = []
    for shape in ((1, 1), (1, 0), (0, 1)):
        rows = []
        for p, pi in zip(chain.primes[:r], chain.uniformizers[:r]):
            L = twisted_condition(chain.curve, p, pi)
            res = restriction_map(gens, p)
            # local pair of (x^s1, x^s2) for each generator
            imgs = []
            for j in range(n):
                c = res(1 << j) & 0b11
                imgs.append((c if shape[0] else 0) | ((c if shape[1] else 0) << 2))
            for f in annihilator(list(L.basis), 4):
                row = 0
                for j, im in enumerate(imgs):
                    if parity(f & im):
                        row |= 1 << j
                if row:
                    rows.append(row)
        out.append(Subspace(n, tuple(kernel(rows, n))))
    return tuple(out)


def d_generators(chain: TransitionChain, r: int) -> tuple[int, ...]:
    bad = [v for v in chain.curve.places if v != 0]
    return (-1,) + tuple(sorted(set(bad) | set(chain.primes[:r])))


def d_elements(chain: TransitionChain, r: int, space: Subspace) -> list[SquareClass]:
    gens = d_generators(chain, r)
    return [decode_class(x, gens) for x in space.basis]


def vanish_d_spaces(
    chain: TransitionChain, bound: int = 10**4, max_steps: int = 64
) -> tuple[TransitionChain, list[int]]:
    """Extend a chain with trivial Selmer group until all three D-spaces vanish.

    Returns the new chain and the history of dim D1 + dim D2 + dim D3.
    """
    E = chain.curve
    if chain.selmer(len(chain.primes)).dim:
        raise ValueError("the chain must start with a trivial Selmer group")
    base = [SquareClass.of(c) for c in (-1, E.alpha, E.beta, E.gamma)]
    basis = _independent(base)
    # one prime per basis element: that element a non-residue, the others residues
    for k in range(len(basis)):
        conds = [(b.value, -1 if j == k else 1) for j, b in enumerate(basis)]
        used = set(E.places) | set(chain.primes) | {2}
        p = find_prime(exclude=used, residue_conditions=conds, bound=bound)
        chain = chain.extend(p, _pick_uniformizer(chain, p))
        _check_stable(chain)
    history = [sum(D.dim for D in d_spaces(chain, len(chain.primes)))]
    for _ in range(max_steps):
        r = len(chain.primes)
        Ds = d_spaces(chain, r)
        if not any(D.dim for D in Ds):
            return chain, history
        x = next(d_elements(chain, r, D)[0] for D in Ds if D.dim)
        conds = [(x.value, -1)] + [(h(E), -1) for h in HELPERS.values()]
        used = set(E.places) | set(chain.primes) | {2}
        p = find_prime(exclude=used, residue_conditions=conds, bound=bound)
        chain = chain.extend(p, _pick_uniformizer(chain, p))
        _check_stable(chain)
        history.append(sum(D.dim for D in d_spaces(chain, len(chain.primes))))
        if history[-1] >= history[-2]:
            raise InvariantError("D-spaces did not shrink")
    raise NotFound("vanish_d_spaces", max_steps)


def _check_stable(chain: TransitionChain) -> None:
    step = transition_step(chain, len(chain.primes) - 1)
    if step.case != "stable" or step.dim_after != 0:
        raise InvariantError(f"extension at {step.prime} left the Selmer group nonzero")


def _independent(classes):
    out, span = [], []
    for c in classes:
        gens = sorted({q for d in classes for q in d.support})
        bits = int(c.sign < 0) | sum(1 << (i + 1) for i, q in enumerate(gens) if q in c.support)
        if len(echelon(span + [bits])) > len(span):
            span.append(bits)
            out.append(c)
    return out
