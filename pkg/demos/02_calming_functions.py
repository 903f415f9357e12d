#!/usr/bin/env python3
"""The three calming functions: bounded 1-Lipschitz velocity truncations that
approach the identity as epsilon -> 0.

Run:  python demos/02_calming_functions.py
"""

import numpy as np

from calmedkse import CalmingKind, apply_calming, calming_sup_norm, defect_bound

eps = 0.1
print(f"epsilon = {eps}\n")
print(f"{'kind':8s} {'eta(3,4)':>22s} {'sup |eta|':>12s} {'defect bound':>24s}")
for variant in ("type1", "type2", "type3"):
    kind = CalmingKind(variant, eps)
    out = apply_calming(kind, np.array([3.0, 4.0]))
    b = defect_bound(kind)
    print(
        f"{variant:8s} ({out[0]:8.4f}, {out[1]:8.4f}) {calming_sup_norm(kind):12.4f}"
        f"   |eta(x)-x| <= eps^{b.alpha:.0f} |x|^{b.beta:.0f}"
    )

# The defect shrinks at the advertised rate: linearly in eps for type1,
# quadratically for types 2 and 3.
x = np.array([1.5, -0.8])
print(f"\nidentity defect |eta(x) - x| at x = ({x[0]:g}, {x[1]:g}):")
print(f"{'eps':>8s} {'type1':>12s} {'type2':>12s} {'type3':>12s}")
for e in (1e-1, 1e-2, 1e-3, 1e-4):
    row = []
    for variant in ("type1", "type2", "type3"):
        out = apply_calming(CalmingKind(variant, e), x)
        row.append(np.sqrt(((out - x) ** 2).sum()))
    print(f"{e:8.0e} {row[0]:12.3e} {row[1]:12.3e} {row[2]:12.3e}")
print("\n(type1 column drops 10x per row, types 2-3 drop 100x per row)")
