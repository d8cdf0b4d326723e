"""Real-place sign calculus behind the dimension cascade.

Twelve auxiliary classes and the form values carry sign vectors at six
orderings of the real embeddings.  The product of their symbols over those
places is -1 exactly when both are negative at an odd number of them.  The resulting pattern drives the predicted cascade 6 -> 4 -> 2 -> 0.

    python demos/03_sign_tables.py
"""

from ranktwist.seltrans import Z_TABLE, L_TABLE, cascade_predict, required_pattern
from ranktwist.seltrans.suitable import table_products_full

prods = table_products_full()
pattern = required_pattern()
print("      " + "  ".join(f"{name:>3}" for name in L_TABLE.rows[:3]))
for i, row in enumerate(prods, start=1):
    cells = []
    for j, s in enumerate(row, start=1):
        mark = "*" if (i, j) in pattern else " "
        cells.append(f"{s:+d}{mark}")
    print(f"{Z_TABLE.rows[i - 1]:>5} " + "  ".join(cells))
print("(* = constrained entry)")
matches = sum(prods[i - 1][j - 1] == s for (i, j), s in pattern.items())
print(f"\n{matches}/{len(pattern)} constrained products match the required pattern")
casc = cascade_predict(prods)
print(f"cascade {casc.dims}, final Selmer dimension {casc.final_dim}")
