"""End to end: find a twist E^t with rank 0 whose opposite twist has a point.

Runs the bundled configuration, prints the certificate summary, re-verifies
it and shows that tampering is caught.

    python demos/05_certified_twist.py
"""

import copy

from ranktwist.pipeline import (
    REGRESSION_CONFIG,
    ExperimentConfig,
    run_experiment,
    verify_certificate,
)

config = ExperimentConfig.load(REGRESSION_CONFIG)
print("config:", config.to_dict())
cert = run_experiment(config)
print("\nwitness", cert["witness"], "gives t =", cert["t"]["value"], "=", cert["t"]["q"])
print("dim Sel2(E^t) =", cert["selmer"]["dim"])
px, py = cert["point"]["x"], cert["point"]["y"]
print(f"point ({px[0]}/{px[1]}, {py[0]}/{py[1]}) on roots {cert['point']['curve']}")
for line in cert["conclusion"]:
    print("  *", line)
print("probe:", cert["probe"])

print("\nverification:", verify_certificate(cert).reason)
bad = copy.deepcopy(cert)
bad["t"]["q"][-1] = 15
print("with a composite q:", verify_certificate(bad).reason)
bad = copy.deepcopy(cert)
bad["selmer"]["dim"] = 4
print("with a tampered Selmer dim:", verify_certificate(bad).reason)
