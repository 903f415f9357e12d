"""Spectral discretization of the periodic square [-pi, pi)^2.

Conventions used throughout the package:

* Spectral coefficients are true Fourier-series coefficients: the forward
  transform divides by n^2, so a field f(x) = sum_k u_k exp(i k.x) has
  exactly those u_k stored.  Parseval then reads
  ``||f||_L2^2 = (2 pi)^2 sum_k |u_k|^2``.
* Wavenumbers per axis are laid out in transform order
  ``0, 1, ..., n/2, -n/2+1, ..., -1`` (the Nyquist mode carries +n/2).
* Dealiasing keeps modes with ``|k_x| <= kc`` and ``|k_y| <= kc`` where
  ``kc = floor(n/3)``; everything else is zeroed.
* Physical arrays are real float64 at the n x n collocation points,
  row-major, with the x index first.  Vector fields stack the two
  components along a leading axis: shape (2, n, n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

DOMAIN_LENGTH = 2.0 * np.pi


def _wavenumbers(n: int) -> np.ndarray:
    """Integer wavenumbers in transform order, Nyquist as +n/2."""
    return np.concatenate([np.arange(0, n // 2 + 1), np.arange(-n // 2 + 1, 0)]).astype(np.float64)


@dataclass(frozen=True)
class Grid:
    """Pre-computed spectral quantities for the periodic square domain.

    Parameters
    ----------
    n : int
        Collocation points (= retained modes) per dimension.  Must be even
        and within [8, 4096].
    """

    n: int

    def __post_init__(self) -> None:
        if self.n % 2 != 0:
            raise ValueError(f"grid size must be even, got n={self.n}")
        if not 8 <= self.n <= 4096:
            raise ValueError(f"grid size must be in [8, 4096], got n={self.n}")

        n = self.n
        object.__setattr__(self, "domain_length", DOMAIN_LENGTH)
        object.__setattr__(self, "dx", DOMAIN_LENGTH / n)

        k1 = _wavenumbers(n)
        object.__setattr__(self, "wavenumbers", k1)
        kx, ky = np.meshgrid(k1, k1, indexing="ij")
        object.__setattr__(self, "kx", kx)
        object.__setattr__(self, "ky", ky)
        object.__setattr__(self, "k2", kx**2 + ky**2)

        kc = n // 3
        object.__setattr__(self, "dealias_cutoff", kc)
        mask = (np.abs(kx) <= kc) & (np.abs(ky) <= kc)
        object.__setattr__(self, "dealias_mask", mask)

        # first-derivative multipliers with the Nyquist plane zeroed
        nyq = n // 2
        object.__setattr__(self, "ddx", 1j * kx * (np.abs(kx) != nyq))
        object.__setattr__(self, "ddy", 1j * ky * (np.abs(ky) != nyq))

        # The grid starts at -pi, so raw FFT output differs from the true
        # Fourier-series coefficients by (-1)^(kx+ky); fold that phase into
        # the normalization so stored coefficients are the true ones.
        phase = np.where((kx + ky).astype(np.int64) % 2 == 0, 1.0, -1.0)
        object.__setattr__(self, "_fwd_scale", phase / n**2)
        object.__setattr__(self, "_inv_scale", phase * n**2)

        # Half-plane (rfft) mirrors of the same quantities for the solver's
        # hot path; real fields make the ky > n/2 half redundant.
        m = n // 2 + 1
        object.__setattr__(self, "half_cols", m)
        k2h = self.k2[:, :m]
        object.__setattr__(self, "k2h", k2h)
        object.__setattr__(self, "ddxh", self.ddx[:, :m])
        object.__setattr__(self, "ddyh", self.ddy[:, :m])
        object.__setattr__(self, "dealias_mask_h", mask[:, :m])
        phase_h = phase[:, :m]
        object.__setattr__(self, "_rfwd_scale", phase_h / n**2)
        object.__setattr__(self, "_rinv_scale", phase_h * n**2)
        object.__setattr__(self, "_rfwd_dealias", (phase_h / n**2) * mask[:, :m])
        object.__setattr__(self, "_ddx_rinv", self.ddx[:, :m] * (phase_h * n**2))
        object.__setattr__(self, "_ddy_rinv", self.ddy[:, :m] * (phase_h * n**2))
        # per-mode multiplicity when summing |u_k|^2 over the half plane only
        pw = np.full((n, m), 2.0)
        pw[:, 0] = 1.0
        pw[:, m - 1] = 1.0
        object.__setattr__(self, "parseval_h", pw)

        x1 = -np.pi + self.dx * np.arange(n)
        object.__setattr__(self, "x1d", x1)
        X, Y = np.meshgrid(x1, x1, indexing="ij")
        object.__setattr__(self, "x", X)
        object.__setattr__(self, "y", Y)


def build_grid(n: int) -> Grid:
    """Construct a Grid for an even resolution n in [8, 4096]."""
    return Grid(int(n))


@dataclass
class Field:
    """A scalar or 2-vector field in physical and/or spectral representation.

    At least one representation is non-None.  ``physical`` is real float64,
    shape (n, n) for scalars or (2, n, n) for vectors; ``spectral`` holds
    the complex Fourier coefficients with the same leading layout.
    """

    components: int
    physical: np.ndarray | None = None
    spectral: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.components not in (1, 2):
            raise ValueError(f"components must be 1 or 2, got {self.components}")
        if self.physical is None and self.spectral is None:
            raise ValueError("Field needs at least one valid representation")

    @classmethod
    def from_physical(cls, values: np.ndarray) -> "Field":
        values = np.asarray(values, dtype=np.float64)
        comps = 1 if values.ndim == 2 else values.shape[0]
        return cls(components=comps, physical=values)

    @classmethod
    def from_spectral(cls, coeffs: np.ndarray) -> "Field":
        coeffs = np.asarray(coeffs, dtype=np.complex128)
        comps = 1 if coeffs.ndim == 2 else coeffs.shape[0]
        return cls(components=comps, spectral=coeffs)

    @property
    def shape_name(self) -> str:
        return "scalar" if self.components == 1 else "vector"


def _check_size(arr: np.ndarray, grid: Grid, what: str) -> None:
    if arr.shape[-2:] != (grid.n, grid.n):
        raise ValueError(f"{what} shape {arr.shape} does not match grid n={grid.n}")


def fwd(physical: np.ndarray, grid: Grid) -> np.ndarray:
    """Forward transform of a raw physical array to Fourier coefficients."""
    _check_size(physical, grid, "physical array")
    return _fft.fft2(physical, axes=(-2, -1)) * grid._fwd_scale


def inv(spectral: np.ndarray, grid: Grid) -> np.ndarray:
    """Inverse transform of Fourier coefficients to a raw real array."""
    _check_size(spectral, grid, "spectral array")
    return _fft.ifft2(spectral * grid._inv_scale, axes=(-2, -1)).real


def rfwd(physical: np.ndarray, grid: Grid) -> np.ndarray:
    """Forward transform of a real array to half-plane coefficients (ky <= n/2)."""
    _check_size(physical, grid, "physical array")
    return _fft.rfft2(physical, axes=(-2, -1)) * grid._rfwd_scale


def rinv(half: np.ndarray, grid: Grid) -> np.ndarray:
    """Inverse transform of half-plane coefficients to a real array."""
    return _fft.irfft2(half * grid._rinv_scale, s=(grid.n, grid.n), axes=(-2, -1))


def full_to_half(spectral: np.ndarray, grid: Grid) -> np.ndarray:
    """Drop the conjugate-redundant ky > n/2 columns."""
    _check_size(spectral, grid, "spectral array")
    return np.ascontiguousarray(spectral[..., :, : grid.half_cols])


def half_to_full(half: np.ndarray, grid: Grid) -> np.ndarray:
    """Rebuild the full spectral plane from a half-plane array by conjugate
    symmetry (the inverse of full_to_half for real-valued fields)."""
    n, m = grid.n, grid.half_cols
    full = np.empty(half.shape[:-1] + (n,), dtype=np.complex128)
    full[..., :, :m] = half
    rows = (-np.arange(n)) % n
    cols = n - np.arange(m, n)
    full[..., :, m:] = np.conj(half[..., rows[:, None], cols[None, :]])
    return full


def forward_transform(f: Field, grid: Grid) -> Field:
    """Return a Field with the spectral representation populated."""
    if f.physical is None:
        raise ValueError("forward_transform needs a valid physical representation")
    return Field(f.components, physical=f.physical, spectral=fwd(f.physical, grid))


def inverse_transform(f: Field, grid: Grid) -> Field:
    """Return a Field with the physical representation populated."""
    if f.spectral is None:
        raise ValueError("inverse_transform needs a valid spectral representation")
    return Field(f.components, physical=inv(f.spectral, grid), spectral=f.spectral)


def get_spectral(f: Field, grid: Grid) -> np.ndarray:
    return f.spectral if f.spectral is not None else fwd(f.physical, grid)


def get_physical(f: Field, grid: Grid) -> np.ndarray:
    return f.physical if f.physical is not None else inv(f.spectral, grid)


def derivative_coeffs(spectral: np.ndarray, axis: str, order: int, grid: Grid) -> np.ndarray:
    """Multiply coefficients by (i k_axis)^order.

    Odd orders zero the Nyquist plane of that axis: with only n samples the
    +n/2 and -n/2 contributions are indistinguishable, and keeping either
    sign makes the derivative of a real field complex.
    """
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if order < 1:
        raise ValueError(f"derivative order must be >= 1, got {order}")
    _check_size(spectral, grid, "spectral array")
    k = grid.kx if axis == "x" else grid.ky
    mult = (1j * k) ** order
    if order % 2 == 1:
        nyq = grid.n // 2
        keep = np.abs(k) != nyq
        mult = mult * keep
    return spectral * mult


def spectral_derivative(f: Field, axis: str, order: int, grid: Grid) -> Field:
    """Spectral differentiation along one axis; exact for resolved modes."""
    if f.spectral is None:
        raise ValueError("spectral_derivative needs a valid spectral representation")
    return Field(f.components, spectral=derivative_coeffs(f.spectral, axis, order, grid))


def dealias_coeffs(spectral: np.ndarray, grid: Grid) -> np.ndarray:
    """Zero every mode with |k_x| > kc or |k_y| > kc (2/3 rule)."""
    return spectral * grid.dealias_mask


def dealias(f: Field, grid: Grid) -> Field:
    if f.spectral is None:
        raise ValueError("dealias needs a valid spectral representation")
    return Field(f.components, spectral=dealias_coeffs(f.spectral, grid))


def l2_norm(f: Field, grid: Grid) -> float:
    """L2 norm over the domain, components summed in quadrature.

    Computed from whichever representation is valid; the spectral route uses
    Parseval with the (2 pi)^2 domain factor, the physical route plain
    collocation quadrature.  The two agree to rounding.
    """
    if f.spectral is not None:
        total = np.sum(np.abs(f.spectral) ** 2)
        return float(np.sqrt(DOMAIN_LENGTH**2 * total))
    _check_size(f.physical, grid, "physical array")
    return float(np.sqrt(grid.dx**2 * np.sum(f.physical**2)))


def hs_norm(f: Field, s: float, grid: Grid) -> float:
    """Sobolev H^s norm with per-mode weight (1 + |k|)^(2s).

    Scaled by the same (2 pi)^2 factor as l2_norm so hs_norm(f, 0) equals
    l2_norm(f).
    """
    spec = get_spectral(f, grid)
    weight = (1.0 + np.sqrt(grid.k2)) ** (2.0 * s)
    total = np.sum(weight * np.abs(spec) ** 2)
    return float(np.sqrt(DOMAIN_LENGTH**2 * total))


def linf_norm(f: Field, grid: Grid) -> float:
    """Max over collocation points of |phi| (scalar) or sqrt(u^2+v^2) (vector)."""
    phys = get_physical(f, grid)
    if f.components == 1:
        return float(np.max(np.abs(phys)))
    return float(np.sqrt(np.max(phys[0] ** 2 + phys[1] ** 2)))
