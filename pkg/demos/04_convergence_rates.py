#!/usr/bin/env python3
"""Reproduce the epsilon-convergence rates at reduced scale: the error of the
calmed solution against the uncalmed reference shrinks linearly in epsilon
for type1 and quadratically for types 2 and 3.

Run:  python demos/04_convergence_rates.py   (about a minute)

The full-scale version (n=128, T=1, 7 epsilons) is what the acceptance suite
and the `calmedkse converge` subcommand run.
"""

import numpy as np

from calmedkse import CalmingKind, EquationForm, RunConfig, convergence_study

config = RunConfig(
    form=EquationForm("vector", CalmingKind("type1", 0.1), 4.1),
    n=64,
    dt=4.2943e-4,
    T=0.25,
    initial="grad-sines",
)
eps_list = list(np.logspace(-1, -3, 5))

for variant, expected in (("type1", 1), ("type2", 2), ("type3", 2)):
    report = convergence_study(config, CalmingKind(variant, 0.1), eps_list)
    print(f"\n{variant} (expected rate ~{expected}):")
    print(f"  {'eps':>10s} {'Linf-L2 err':>14s} {'Linf-Linf err':>14s} {'L2-H2 err':>14s}")
    for s in report.series:
        print(f"  {s.epsilon:10.4g} {s.err_linf_l2:14.4e} {s.err_linf_linf:14.4e} {s.err_l2_h2:14.4e}")
    for name, fit in report.slopes.items():
        print(f"  {name}: slope {fit.slope:.3f} (residual {fit.residual:.1e})")
