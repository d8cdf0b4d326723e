"""Chains of Selmer structures obtained by twisting the conditions prime by prime.

For primes v_1, ..., v_r outside the bad set and elements pi_j of odd
valuation at v_j, structure i imposes at v_j (j <= i) the subspace
<(ab, pi_j a), (-pi_j a, -ac)> where a, b, c are alpha, beta, gamma; the
remaining v_j are unramified.  Adjoining v_{i+1} changes the Selmer dimension
by -2, 0 or +2 according to how the group and its relaxation meet v_{i+1}.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..curve2tor import Curve
from ..errors import InvariantError
from ..f2 import Subspace
from ..qlocal import SquareClass, local_class
from .structures import (
    SelmerGroup,
    SelmerStructure,
    compute_selmer,
    restrict_group,
    unramified_subspace,
)


def twisted_condition(E: Curve, v: int, pi) -> Subspace:
    """The subspace <(ab, pi a), (-pi a, -ac)> of the pair space at v."""
    if local_class(pi, v) >> 1 != 1:
        raise ValueError(f"{pi} must have odd valuation at {v}")
    a, b, c = E.alpha, E.beta, E.gamma
    ab, pa = local_class(a * b, v), local_class(pi * a, v)
    mpa, mac = local_class(-pi * a, v), local_class(-a * c, v)
    return Subspace.span(4, [ab | (pa << 2), mpa | (mac << 2)])


@dataclass
class TransitionChain:
    curve: Curve
    primes: tuple[int, ...]
    uniformizers: tuple[int, ...]

    def __post_init__(self):
        if len(self.primes) != len(self.uniformizers):
            raise ValueError("one uniformizer per prime")
        if len(set(self.primes)) != len(self.primes):
            raise ValueError("primes must be distinct")
        for p in self.primes:
            if p in self.curve.places or p < 3:
                raise ValueError(f"{p} is a bad place")

    def structure(self, i: int, relax_next: bool = False) -> SelmerStructure:
        """Structure L_i (twisted at the first i primes).

        With relax_next the condition at v_{i+1} is the whole local space.
        """
        cond = {}
        for j, (p, pi) in enumerate(zip(self.primes, self.uniformizers)):
            if j < i:
                cond[p] = twisted_condition(self.curve, p, pi)
            else:
                cond[p] = unramified_subspace(p)
        if relax_next:
            cond[self.primes[i]] = Subspace.full(4)
        return SelmerStructure(self.curve, cond)

    def selmer(self, i: int, relax_next: bool = False) -> SelmerGroup:
        return compute_selmer(self.structure(i, relax_next))

    def extend(self, p: int, pi) -> "TransitionChain":
        return TransitionChain(
            self.curve, self.primes + (p,), self.uniformizers + (int(pi),)
        )


@dataclass(frozen=True)
class StepReport:
    index: int
    prime: int
    dim_before: int
    dim_after: int
    dim_relaxed: int
    restriction_dim: int
    relaxed_restriction: Subspace
    new_condition: Subspace
    case: str
    contained: bool

    @property
    def change(self) -> int:
        return self.dim_after - self.dim_before


def transition_step(chain: TransitionChain, i: int) -> StepReport:
    """Compare the Selmer groups of L_i and L_{i+1} at the prime v_{i+1}."""
    p = chain.primes[i]
    before = chain.selmer(i)
    relaxed = chain.selmer(i, relax_next=True)
    after = chain.selmer(i + 1)
    res = restrict_group(before, p)
    A = restrict_group(relaxed, p)
    L = twisted_condition(chain.curve, p, chain.uniformizers[i])
    if A.dim != 2:
        raise InvariantError(f"relaxed restriction at {p} has dim {A.dim}")
    if res.dim == 2:
        case, predicted = "drop", -2
    elif res.dim == 0 and A == L:
        case, predicted = "jump", 2
    else:
        case, predicted = "stable", 0
    change = after.dim - before.dim
    if change != predicted:
        raise InvariantError(
            f"step {i} at {p}: dimension changed by {change}, expected {predicted}"
        )
    # both groups share generators, so containment is a subspace test
    contained = after.space().issubset(before.space()) if case == "drop" else True
    if case == "drop" and not contained:
        raise InvariantError(f"step {i}: new group not inside the old one")
    return StepReport(
        i, p, before.dim, after.dim, relaxed.dim, res.dim, A, L, case, contained
    )


def run_chain(chain: TransitionChain) -> list[StepReport]:
    return [transition_step(chain, i) for i in range(len(chain.primes))]


def final_step_dim(E: Curve, d: int) -> int:
    """2 + dim Sel(L_{r-1}) for the chain of primes of d, uniformizers all d."""
    primes = tuple(sorted(SquareClass.of(d).support))
    chain = TransitionChain(E, primes, (d,) * len(primes))
    return 2 + chain.selmer(len(primes) - 1).dim
