"""Right-hand sides of the (calmed) Kuramoto-Sivashinsky equations.

The evolution equations, moved to explicit form dt(state) = RHS:

* vector:  dt u   = -(eta(u) . grad) u       + lambda lap u   - lap^2 u
* scalar:  dt phi = -(1/2)(eta(grad phi) . grad) phi + lambda lap phi - lap^2 phi

The linear terms are diagonal in Fourier space with symbol
``L(k) = lambda |k|^2 - |k|^4``.  The nonlinear term is evaluated
pseudo-spectrally: derivatives in spectral space, products on the
collocation grid, one 2/3-rule truncation applied to the final product.
Only the advecting velocity passes through the calming function; the
derivatives of the state are left untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

from .calming import CalmingKind, apply_calming
from .spectral import Field, Grid, dealias_coeffs, fwd, inv

SHAPES = ("vector", "scalar")


@dataclass(frozen=True)
class EquationForm:
    """Which equation to solve: field shape, calming choice, and instability
    coefficient lambda (the strength of the backward-diffusion term)."""

    shape: str
    calming: CalmingKind
    lam: float

    def __post_init__(self) -> None:
        if self.shape not in SHAPES:
            raise ValueError(f"unknown equation shape {self.shape!r}; expected one of {SHAPES}")
        if not self.lam > 0.0:
            raise ValueError(f"lambda must be > 0, got {self.lam}")


def linear_symbol(grid: Grid, lam: float) -> np.ndarray:
    """Per-mode multiplier lambda |k|^2 - |k|^4 of the linear terms.

    Positive (growing) exactly on the band 0 < |k|^2 < lambda, zero at the
    mean mode, and steeply negative for large |k|.  lambda = 0 is accepted
    for purely dissipative test problems.
    """
    if lam < 0.0:
        raise ValueError(f"lambda must be >= 0, got {lam}")
    return lam * grid.k2 - grid.k2**2


def nonlinear_vector_coeffs(u_hat: np.ndarray, kind: CalmingKind, grid: Grid) -> np.ndarray:
    """-(eta(u) . grad) u in spectral space, dealiased; u_hat has shape (2, n, n)."""
    if u_hat.shape != (2, grid.n, grid.n):
        raise ValueError(f"expected vector coefficients of shape (2, {grid.n}, {grid.n}), got {u_hat.shape}")
    stack = np.empty((6, grid.n, grid.n), dtype=np.complex128)
    stack[0:2] = u_hat
    stack[2:4] = grid.ddx * u_hat
    stack[4:6] = grid.ddy * u_hat
    phys = inv(stack, grid)
    u, u_x, u_y = phys[0:2], phys[2:4], phys[4:6]
    w = apply_calming(kind, u)
    advect = -(w[0] * u_x + w[1] * u_y)
    return dealias_coeffs(fwd(advect, grid), grid)


def nonlinear_scalar_coeffs(phi_hat: np.ndarray, kind: CalmingKind, grid: Grid) -> np.ndarray:
    """-(1/2)(eta(grad phi) . grad) phi in spectral space, dealiased."""
    if phi_hat.shape != (grid.n, grid.n):
        raise ValueError(f"expected scalar coefficients of shape ({grid.n}, {grid.n}), got {phi_hat.shape}")
    stack = np.empty((2, grid.n, grid.n), dtype=np.complex128)
    stack[0] = grid.ddx * phi_hat
    stack[1] = grid.ddy * phi_hat
    grad = inv(stack, grid)
    w = apply_calming(kind, grad)
    advect = -0.5 * (w[0] * grad[0] + w[1] * grad[1])
    return dealias_coeffs(fwd(advect, grid), grid)


def nonlinear_coeffs(state_hat: np.ndarray, form: EquationForm, grid: Grid) -> np.ndarray:
    if form.shape == "vector":
        return nonlinear_vector_coeffs(state_hat, form.calming, grid)
    return nonlinear_scalar_coeffs(state_hat, form.calming, grid)


def nonlinear_vector_coeffs_h(u_h: np.ndarray, kind: CalmingKind, grid: Grid) -> np.ndarray:
    """Half-plane (rfft layout) variant of nonlinear_vector_coeffs.

    Identical mathematics on the conjugate-reduced representation; this is
    the time stepper's fast path and is cross-checked against the full-plane
    route in the test suite.
    """
    n, m = grid.n, grid.half_cols
    stack = np.empty((6, n, m), dtype=np.complex128)
    stack[0:2] = u_h * grid._rinv_scale
    stack[2:4] = u_h * grid._ddx_rinv
    stack[4:6] = u_h * grid._ddy_rinv
    phys = _fft.irfft2(stack, s=(n, n), axes=(-2, -1))
    w = apply_calming(kind, phys[0:2])
    advect = -(w[0] * phys[2:4] + w[1] * phys[4:6])
    return _fft.rfft2(advect, axes=(-2, -1)) * grid._rfwd_dealias


def nonlinear_scalar_coeffs_h(phi_h: np.ndarray, kind: CalmingKind, grid: Grid) -> np.ndarray:
    """Half-plane variant of nonlinear_scalar_coeffs."""
    n, m = grid.n, grid.half_cols
    stack = np.empty((2, n, m), dtype=np.complex128)
    stack[0] = phi_h * grid._ddx_rinv
    stack[1] = phi_h * grid._ddy_rinv
    grad = _fft.irfft2(stack, s=(n, n), axes=(-2, -1))
    w = apply_calming(kind, grad)
    advect = -0.5 * (w[0] * grad[0] + w[1] * grad[1])
    return _fft.rfft2(advect, axes=(-2, -1)) * grid._rfwd_dealias


def nonlinear_coeffs_h(state_h: np.ndarray, form: EquationForm, grid: Grid) -> np.ndarray:
    if form.shape == "vector":
        return nonlinear_vector_coeffs_h(state_h, form.calming, grid)
    return nonlinear_scalar_coeffs_h(state_h, form.calming, grid)


def nonlinear_rhs_vector(u_spec: Field, form: EquationForm, grid: Grid) -> Field:
    """Field-level wrapper around nonlinear_vector_coeffs."""
    if form.shape != "vector":
        raise ValueError("nonlinear_rhs_vector needs a vector equation form")
    if u_spec.spectral is None or u_spec.components != 2:
        raise ValueError("nonlinear_rhs_vector needs a vector field with valid spectral data")
    return Field.from_spectral(nonlinear_vector_coeffs(u_spec.spectral, form.calming, grid))


def nonlinear_rhs_scalar(phi_spec: Field, form: EquationForm, grid: Grid) -> Field:
    """Field-level wrapper around nonlinear_scalar_coeffs."""
    if form.shape != "scalar":
        raise ValueError("nonlinear_rhs_scalar needs a scalar equation form")
    if phi_spec.spectral is None or phi_spec.components != 1:
        raise ValueError("nonlinear_rhs_scalar needs a scalar field with valid spectral data")
    return Field.from_spectral(nonlinear_scalar_coeffs(phi_spec.spectral, form.calming, grid))


def full_rhs(state_spec: Field, form: EquationForm, L: np.ndarray, grid: Grid) -> Field:
    """Linear part L * u_hat plus the dealiased nonlinear term."""
    if state_spec.spectral is None:
        raise ValueError("full_rhs needs a valid spectral representation")
    expected = 2 if form.shape == "vector" else 1
    if state_spec.components != expected:
        raise ValueError(f"{form.shape} form expects {expected} component(s), got {state_spec.components}")
    nl = nonlinear_coeffs(state_spec.spectral, form, grid)
    return Field.from_spectral(L * state_spec.spectral + nl)
