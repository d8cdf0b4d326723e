"""2-Selmer groups, the transition process and Selmer reduction.

    python demos/02_selmer_and_chains.py
"""

from ranktwist.curve2tor import Curve
from ranktwist.seltrans import TransitionChain, run_chain, selmer2, selmer_reduce



def show(roots):
    return "y^2 = " + "".join(f"(x {'-' if a >= 0 else '+'} {abs(a)})" if a else "x" for a in roots)


for roots in [(0, 1, -1), (0, 5, -5), (0, 10, 17)]:
    E = Curve(*roots)
    G = selmer2(E)
    pairs = [(a.value, b.value) for a, b in G.pairs()]
    print(f"{show(roots)}: dim Sel2 = {G.dim}, basis {pairs}")

print("\nSwitching local conditions one prime at a time changes the dimension by -2, 0 or +2:")
E = Curve(0, 10, 17)
chain = TransitionChain(E, (11, 19, 23, 29), (11, 19, 23, 29))
for step in run_chain(chain):
    print(f"  prime {step.prime:3d}: {step.dim_before} -> {step.dim_after} ({step.case},"
          f" restriction dim {step.restriction_dim})")

print("\nSelmer reduction picks primes that force drops until the group is trivial:")
for roots in [(0, 1, -1), (0, 10, 17), (0, 5, -5)]:
    red = selmer_reduce(Curve(*roots))
    print(f"  {roots}: dims {red.dims}, moves {red.moves}")
print("  (odd parity stops at dimension 1)")
