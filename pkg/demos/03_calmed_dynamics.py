#!/usr/bin/env python3
"""Evolve the calmed vector equation in the chaotic regime (lambda = 4.1) and
write snapshots in the package's binary format.

Run:  python demos/03_calmed_dynamics.py   (about half a minute)

The snapshots land in demos/out_dynamics/ and can be rendered with the
plotting package:  ckse-plot field demos/out_dynamics/snap_t2.000000.bin out.png
"""

import numpy as np

from calmedkse import (
    CalmingKind,
    EquationForm,
    RunConfig,
    build_grid,
    evolve,
    inverse_transform,
    make_initial,
    write_snapshot,
)

n = 64  # the full paper regime uses n=128; 64 keeps the demo quick
config = RunConfig(
    form=EquationForm("vector", CalmingKind("type3", 0.1), 4.1),
    n=n,
    dt=4.2943e-4,
    T=2.0,
    snapshot_every=0.5,
    initial="grad-sines",
)
grid = build_grid(n)
traj = evolve(config, make_initial("grad-sines", grid, "vector"))

print("type3 calmed run, eps=0.1, lambda=4.1, grad-sines data")
print(f"{'t':>6s} {'L2':>10s} {'Linf':>10s} {'H2':>12s}")
for i in range(0, len(traj.times), len(traj.times) // 8):
    print(f"{traj.times[i]:6.2f} {traj.l2[i]:10.4f} {traj.linf[i]:10.4f} {traj.h2[i]:12.4f}")

import os

outdir = os.path.join(os.path.dirname(__file__), "out_dynamics")
os.makedirs(outdir, exist_ok=True)
for t, snap in traj.snapshots:
    path = os.path.join(outdir, f"snap_t{t:.6f}.bin")
    write_snapshot(
        path,
        inverse_transform(snap, grid),
        {"form": "vector", "lambda": 4.1, "epsilon": 0.1, "kind": "type3", "t": t, "dt": config.dt},
    )
print(f"\nwrote {len(traj.snapshots)} snapshots to {outdir}/")
print(f"CFL violations: {traj.cfl_violations}")
