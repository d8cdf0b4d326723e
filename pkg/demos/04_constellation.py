"""Prime values of four affine forms: local densities against actual counts.

    python demos/04_constellation.py
"""

from ranktwist.constellation import (
    admissibility_check,
    build_system,
    count_and_compare,
)

system = build_system(0, 1, 2, kappa=1, m=6, lam=1)
print("forms (cx, cy, c0):", system.describe())

print("\nm = 2 gives an inadmissible system:",
      "bad prime", admissibility_check(build_system(0, 1, 2, m=2)))

for N in (100, 300, 500):
    rep = count_and_compare(system, None, N, cutoff=10**4)
    print(f"\nN = {N}: {rep.witness_count} prime quadruples, weighted count {rep.weighted_count:.4g}")
    print(f"  prediction = area {rep.volume} * N^2 * singular series {rep.singular_series:.4f}"
          f" = {rep.prediction:.4g}")
    print(f"  ratio {rep.ratio:.3f} (series truncation drift {rep.series_relative_change:.2e})")
print("\nsmall local factors:", [(p, str(b)) for p, b in rep.small_betas[:5]])
