"""Square classes, Hilbert symbols and the product formula.

    python demos/01_local_symbols.py
"""

from ranktwist.qlocal import INF, SquareClass, find_prime, hilbert_symbol, reciprocity_audit

print("Square classes are signed squarefree integers:")
for n in (18, -8, 49, -30):
    print(f"  {n:4d} -> {SquareClass.of(n).value}")

print("\nHilbert symbols (a, b)_v:")
for a, b, v in [(-1, -1, INF), (-1, -1, 2), (3, 5, 5), (2, 17, 17)]:
    print(f"  ({a}, {b})_{'inf' if v == INF else v} = {hilbert_symbol(a, b, v):+d}")

print("\nThe product over all places is always +1:")
for a, b in [(3, 5), (-1, -1), (-6, 35)]:
    symbols, prod = reciprocity_audit(a, b)
    minus = [("inf" if v == INF else v) for v, s in symbols.items() if s == -1]
    print(f"  ({a}, {b}): -1 at {minus}, product {prod:+d}")

print("\nPrime search under congruence and Legendre conditions:")
p = find_prime(congruences=[(1, 24)], legendre_conditions=[(5, 1)])
print(f"  least p = 1 mod 24 that is a square mod 5: {p}")
