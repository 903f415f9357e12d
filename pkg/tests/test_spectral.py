"""Tests for the spectral discretization: grid, transforms, derivatives,
dealiasing, and norms."""

import numpy as np
import pytest

from calmedkse.spectral import (
    Field,
    build_grid,
    dealias,
    forward_transform,
    full_to_half,
    fwd,
    half_to_full,
    hs_norm,
    inv,
    inverse_transform,
    l2_norm,
    linf_norm,
    rfwd,
    rinv,
    spectral_derivative,
)


def random_band_limited(grid, rng, components=1, kmax=None):
    """Real random field with spectral support |k_x|, |k_y| <= kmax."""
    n = grid.n
    kmax = grid.dealias_cutoff if kmax is None else kmax
    shape = (n, n) if components == 1 else (components, n, n)
    spec = np.zeros(shape, dtype=np.complex128)
    block = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    keep = (np.abs(grid.kx) <= kmax) & (np.abs(grid.ky) <= kmax)
    spec = block * keep
    # real field: symmetrize
    ridx = (-np.arange(n)) % n
    spec = 0.5 * (spec + np.conj(spec[..., ridx[:, None], ridx[None, :]]))
    return Field(components, physical=inv(spec, grid), spectral=spec)


class TestGrid:
    def test_n128_constants(self):
        g = build_grid(128)
        assert g.dealias_cutoff == 42
        assert g.dx == pytest.approx(2 * np.pi / 128, rel=1e-15)
        assert g.dx * g.n == pytest.approx(2 * np.pi, rel=1e-15)

    def test_wavenumber_order_n8(self):
        g = build_grid(8)
        assert list(g.wavenumbers) == [0, 1, 2, 3, 4, -3, -2, -1]

    @pytest.mark.parametrize("bad", [7, 9, 6, 0, -4, 4098, 8192])
    def test_rejects_bad_sizes(self, bad):
        with pytest.raises(ValueError):
            build_grid(bad)

    def test_x_starts_at_minus_pi(self):
        g = build_grid(32)
        assert g.x1d[0] == pytest.approx(-np.pi)
        assert g.x1d[-1] == pytest.approx(np.pi - g.dx)


class TestTransforms:
    def test_cosine_coefficients(self):
        g = build_grid(64)
        fs = forward_transform(Field.from_physical(np.cos(g.x)), g)
        assert fs.spectral[1, 0] == pytest.approx(0.5, abs=1e-12)
        assert fs.spectral[-1, 0] == pytest.approx(0.5, abs=1e-12)
        rest = fs.spectral.copy()
        rest[1, 0] = rest[-1, 0] = 0.0
        assert np.abs(rest).max() < 1e-12

    def test_constant_field(self):
        g = build_grid(32)
        fs = forward_transform(Field.from_physical(np.ones((32, 32))), g)
        assert fs.spectral[0, 0] == pytest.approx(1.0, abs=1e-13)
        assert np.abs(fs.spectral).sum() == pytest.approx(1.0, abs=1e-12)

    def test_round_trip_100_random_fields(self):
        g = build_grid(64)
        rng = np.random.default_rng(2024)
        for components in (1, 2):
            for _ in range(50):
                f = random_band_limited(g, rng, components)
                back = inverse_transform(forward_transform(f, g), g)
                rel = np.abs(back.physical - f.physical).max() / np.abs(f.physical).max()
                assert rel <= 1e-12

    def test_conjugate_symmetry(self):
        g = build_grid(32)
        rng = np.random.default_rng(5)
        spec = fwd(rng.standard_normal((32, 32)), g)
        ridx = (-np.arange(32)) % 32
        assert np.abs(spec - np.conj(spec[ridx[:, None], ridx[None, :]])).max() < 1e-15

    def test_size_mismatch_rejected(self):
        g = build_grid(32)
        with pytest.raises(ValueError):
            fwd(np.ones((16, 16)), g)

    def test_missing_representation_rejected(self):
        g = build_grid(32)
        with pytest.raises(ValueError):
            forward_transform(Field.from_spectral(np.zeros((32, 32), complex)), g)
        with pytest.raises(ValueError):
            inverse_transform(Field.from_physical(np.zeros((32, 32))), g)

    def test_half_plane_round_trip(self):
        g = build_grid(48)
        rng = np.random.default_rng(11)
        f = rng.standard_normal((2, 48, 48))
        half = rfwd(f, g)
        assert np.abs(full_to_half(fwd(f, g), g) - half).max() < 1e-14
        assert np.abs(half_to_full(half, g) - fwd(f, g)).max() < 1e-14
        assert np.abs(rinv(half, g) - f).max() < 1e-13


class TestDerivatives:
    def test_dx_sin_is_cos(self):
        g = build_grid(64)
        fs = forward_transform(Field.from_physical(np.sin(g.x)), g)
        d = inverse_transform(spectral_derivative(fs, "x", 1, g), g)
        assert np.abs(d.physical - np.cos(g.x)).max() <= 1e-12

    def test_dy_of_x_only_field_is_zero(self):
        g = build_grid(64)
        fs = forward_transform(Field.from_physical(np.cos(g.x)), g)
        d = spectral_derivative(fs, "y", 1, g)
        assert np.abs(d.spectral).max() <= 1e-14

    def test_second_derivative(self):
        g = build_grid(64)
        fs = forward_transform(Field.from_physical(np.cos(2 * g.x)), g)
        d = inverse_transform(spectral_derivative(fs, "x", 2, g), g)
        assert np.abs(d.physical + 4 * np.cos(2 * g.x)).max() <= 1e-12

    @pytest.mark.parametrize("n", [32, 128])
    def test_single_mode_exactness(self, n):
        g = build_grid(n)
        kc = g.dealias_cutoff
        # modes are built exactly in spectral space so the check isolates the
        # derivative operator from sampling/transform roundoff
        for kx, ky in [(1, 0), (0, 1), (3, 2), (kc, 0), (kc, kc), (5, -7)]:
            spec = np.zeros((n, n), dtype=np.complex128)
            spec[kx, ky] = 0.5
            spec[-kx, -ky] = 0.5
            fs = Field.from_spectral(spec)
            for axis, order, expect in [
                ("x", 1, -kx * np.sin(kx * g.x + ky * g.y)),
                ("y", 1, -ky * np.sin(kx * g.x + ky * g.y)),
                ("x", 2, -(kx**2) * np.cos(kx * g.x + ky * g.y)),
                ("y", 4, ky**4 * np.cos(kx * g.x + ky * g.y)),
            ]:
                d = inverse_transform(spectral_derivative(fs, axis, order, g), g)
                k_ax = abs(kx) if axis == "x" else abs(ky)
                scale = max(float(k_ax) ** order, 1.0)
                assert np.abs(d.physical - expect).max() / scale <= 1e-11

    def test_odd_order_zeroes_nyquist(self):
        g = build_grid(16)
        spec = np.zeros((16, 16), dtype=np.complex128)
        spec[8, 0] = 1.0  # Nyquist mode in x
        d = spectral_derivative(Field.from_spectral(spec), "x", 1, g)
        assert np.abs(d.spectral).max() == 0.0
        d2 = spectral_derivative(Field.from_spectral(spec), "x", 2, g)
        assert np.abs(d2.spectral[8, 0]) == pytest.approx(64.0)

    def test_invalid_arguments(self):
        g = build_grid(16)
        fs = Field.from_spectral(np.zeros((16, 16), complex))
        with pytest.raises(ValueError):
            spectral_derivative(fs, "z", 1, g)
        with pytest.raises(ValueError):
            spectral_derivative(fs, "x", 0, g)


class TestDealias:
    def test_cutoff_boundary_n128(self):
        g = build_grid(128)
        spec = np.zeros((128, 128), dtype=np.complex128)
        spec[43, 0] = 1.0
        spec[42, 0] = 2.0
        out = dealias(Field.from_spectral(spec), g)
        assert out.spectral[43, 0] == 0.0
        assert out.spectral[42, 0] == 2.0

    def test_band_limited_unchanged(self):
        g = build_grid(64)
        rng = np.random.default_rng(3)
        f = random_band_limited(g, rng, kmax=g.dealias_cutoff)
        out = dealias(f, g)
        assert np.array_equal(out.spectral, f.spectral)

    def test_high_mode_cosine_zeroed(self):
        g = build_grid(128)
        fs = forward_transform(Field.from_physical(np.cos(50 * g.x)), g)
        out = dealias(fs, g)
        # the +-50 modes are zeroed exactly; what survives is the sampled
        # input's transform noise at the kept modes
        assert np.abs(out.spectral[50, 0]) == 0.0
        assert np.abs(out.spectral).max() <= 1e-14

    def test_idempotent(self):
        g = build_grid(64)
        rng = np.random.default_rng(4)
        f = Field.from_spectral(fwd(rng.standard_normal((64, 64)), g))
        once = dealias(f, g)
        twice = dealias(once, g)
        assert np.array_equal(once.spectral, twice.spectral)


class TestNorms:
    def test_l2_grad_sines(self):
        from calmedkse.experiments import make_initial

        g = build_grid(128)
        u0 = make_initial("grad-sines", g, "vector")
        assert l2_norm(u0, g) == pytest.approx(2 * np.sqrt(2) * np.pi, rel=1e-12)

    def test_l2_zero_and_single_mode(self):
        g = build_grid(64)
        assert l2_norm(Field.from_physical(np.zeros((2, 64, 64))), g) == 0.0
        f = Field.from_physical(np.stack([np.cos(g.x), np.zeros_like(g.x)]))
        assert l2_norm(f, g) == pytest.approx(np.sqrt(2) * np.pi, rel=1e-12)

    def test_parseval_agreement(self):
        g = build_grid(64)
        rng = np.random.default_rng(6)
        for components in (1, 2):
            f = random_band_limited(g, rng, components)
            via_phys = l2_norm(Field(components, physical=f.physical), g)
            via_spec = l2_norm(Field(components, spectral=f.spectral), g)
            assert abs(via_phys - via_spec) <= 1e-10 * via_spec

    def test_hs_cosx_s2(self):
        g = build_grid(64)
        f = forward_transform(Field.from_physical(np.stack([np.cos(g.x), np.zeros_like(g.x)])), g)
        assert hs_norm(f, 2.0, g) == pytest.approx(4 * np.sqrt(2) * np.pi, rel=1e-12)

    def test_hs_zero_field_and_s0(self):
        g = build_grid(64)
        zero = Field.from_spectral(np.zeros((64, 64), complex))
        assert hs_norm(zero, 3.0, g) == 0.0
        rng = np.random.default_rng(7)
        f = random_band_limited(g, rng)
        assert hs_norm(f, 0.0, g) == pytest.approx(l2_norm(f, g), rel=1e-13)

    def test_hs_monotone_in_s(self):
        g = build_grid(64)
        rng = np.random.default_rng(8)
        for _ in range(5):
            f = random_band_limited(g, rng)
            values = [hs_norm(f, s, g) for s in (-1.0, 0.0, 0.5, 1.0, 2.0, 3.0)]
            assert all(a <= b * (1 + 1e-13) for a, b in zip(values, values[1:]))

    def test_linf_examples(self):
        g = build_grid(64)
        f = Field.from_physical(np.stack([np.cos(g.x), np.zeros_like(g.x)]))
        assert linf_norm(f, g) == pytest.approx(1.0, rel=1e-12)
        const = Field.from_physical(np.stack([np.full((64, 64), 3.0), np.full((64, 64), 4.0)]))
        assert linf_norm(const, g) == pytest.approx(5.0, rel=1e-15)
        scal = Field.from_physical(-2.0 * np.cos(g.y))
        assert linf_norm(scal, g) == pytest.approx(2.0, rel=1e-12)

    def test_linf_grad_sines_vs_refined_grid(self):
        from calmedkse.experiments import make_initial

        coarse = build_grid(128)
        fine = build_grid(512)
        v = linf_norm(make_initial("grad-sines", coarse, "vector"), coarse)
        v_fine = linf_norm(make_initial("grad-sines", fine, "vector"), fine)
        assert abs(v - v_fine) <= 1e-3 * v_fine
