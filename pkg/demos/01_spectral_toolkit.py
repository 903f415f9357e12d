#!/usr/bin/env python3
"""Tour of the spectral toolkit: grids, transforms, derivatives, dealiasing,
and the L2 / H^s / Linf norms.

Run:  python demos/01_spectral_toolkit.py
"""

import numpy as np

from calmedkse import (
    Field,
    build_grid,
    dealias,
    forward_transform,
    hs_norm,
    inverse_transform,
    l2_norm,
    linf_norm,
    spectral_derivative,
)

grid = build_grid(128)
print(f"grid: n={grid.n}, dx={grid.dx:.6f}, dealias cutoff kc={grid.dealias_cutoff}")
print(f"wavenumber layout (n=8 for readability): {build_grid(8).wavenumbers}")

# A field and its coefficients: cos(x) lives at modes (+-1, 0) with weight 1/2.
f = forward_transform(Field.from_physical(np.cos(grid.x)), grid)
print(f"\ncos(x) coefficients: u(1,0)={f.spectral[1,0]:.3f}, u(-1,0)={f.spectral[-1,0]:.3f}")

# Round trip is exact to rounding.
back = inverse_transform(Field.from_spectral(f.spectral), grid)
print(f"round-trip max error: {np.abs(back.physical - np.cos(grid.x)).max():.2e}")

# Spectral differentiation is exact on resolved modes.
d = inverse_transform(spectral_derivative(f, "x", 1, grid), grid)
print(f"d/dx cos(x) vs -sin(x): {np.abs(d.physical + np.sin(grid.x)).max():.2e}")

# Dealiasing zeroes everything above kc = floor(n/3) per axis.
high = forward_transform(Field.from_physical(np.cos(50 * grid.x)), grid)
print(f"\ncos(50x) after 2/3 dealiasing: max |coeff| = {np.abs(dealias(high, grid).spectral).max():.2e}")

# Norms: the standard initial data has closed-form values.
u0 = Field.from_physical(
    np.stack([np.cos(grid.x + grid.y) + np.cos(grid.x), np.cos(grid.x + grid.y) + np.cos(grid.y)])
)
u0 = forward_transform(u0, grid)
print(f"\n||u0||_L2 = {l2_norm(u0, grid):.6f}   (analytic 2*sqrt(2)*pi = {2*np.sqrt(2)*np.pi:.6f})")
print(f"||u0||_Linf = {linf_norm(u0, grid):.6f} (analytic 2*sqrt(2) = {2*np.sqrt(2):.6f})")
print(f"||u0||_H2 = {hs_norm(u0, 2.0, grid):.6f} (H^0 reproduces L2: {hs_norm(u0, 0.0, grid):.6f})")
