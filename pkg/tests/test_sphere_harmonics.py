"""Exact spherical harmonic transform on the Gauss-Legendre grid."""

import math

import numpy as np
import pytest

from flaglets.sphere_harmonics import (
    SphereCoeffs,
    SphereGrid,
    assoc_legendre_table,
    coeff_index,
    sht_forward,
    sht_inverse,
    sphere_sampling,
)

from oracles import legendre_high_precision, naive_sht_forward, naive_sht_inverse, ylm_point


def random_coeffs(L, rng):
    c = rng.uniform(-1, 1, L * L) + 1j * rng.uniform(-1, 1, L * L)
    return SphereCoeffs(L, c)


class TestSampling:
    def test_grid_shape(self):
        thetas, phis = sphere_sampling(8)
        assert thetas.shape == (8,)
        assert phis.shape == (15,)
        # colatitudes descend from near the north pole? they cover (0, pi)
        assert np.all(thetas > 0) and np.all(thetas < np.pi)
        assert phis[0] == 0.0
        assert np.allclose(np.diff(phis), 2 * np.pi / 15)

    def test_coeff_index(self):
        assert coeff_index(0, 0) == 0
        assert coeff_index(1, -1) == 1
        assert coeff_index(1, 0) == 2
        assert coeff_index(1, 1) == 3
        assert coeff_index(2, -2) == 4


class TestLegendreValues:
    def test_low_degree_analytic(self):
        # orthonormalized P~_l^m at x = 0.3
        x = 0.3
        table = assoc_legendre_table(4, x)
        assert table[0] == pytest.approx(math.sqrt(0.5))
        assert table[1 * 4 + 0] == pytest.approx(math.sqrt(1.5) * x)
        # P~_1^1 = -sqrt(3)/2 * sqrt(1-x^2)
        assert table[1 * 4 + 1] == pytest.approx(-math.sqrt(0.75) * math.sqrt(1 - x * x))
        # P~_2^0 = sqrt(5/2) * (3x^2-1)/2
        assert table[2 * 4 + 0] == pytest.approx(math.sqrt(2.5) * 0.5 * (3 * x * x - 1))

    def test_high_order_vs_mpmath(self):
        # sectoral seed is where double precision decays fastest
        x = 0.99
        got = assoc_legendre_table(51, x)[50 * 51 + 50]
        want = legendre_high_precision(50, 50, x)
        assert abs(got - want) < 1e-12 * abs(want)

    def test_mid_degree_vs_mpmath(self):
        for ell, m, x in [(80, 3, -0.4), (120, 60, 0.1), (40, 40, 0.999)]:
            got = assoc_legendre_table(ell + 1, x)[ell * (ell + 1) + m]
            want = legendre_high_precision(ell, m, x)
            assert abs(got - want) < 1e-11 * max(abs(want), 1e-300), (ell, m, x)


class TestAgainstNaiveTransform:
    @pytest.mark.parametrize("L", [1, 2, 4, 8])
    def test_forward_matches_quadruple_sum(self, L):
        rng = np.random.default_rng(100 + L)
        thetas, phis = sphere_sampling(L)
        values = rng.uniform(-1, 1, (L, 2 * L - 1)) + 1j * rng.uniform(-1, 1, (L, 2 * L - 1))
        fast = sht_forward(SphereGrid(L, values)).coeffs
        slow = naive_sht_forward(values, L)
        assert np.max(np.abs(fast - slow)) < 1e-11

    def test_inverse_matches_direct_synthesis(self):
        L = 8
        rng = np.random.default_rng(7)
        c = random_coeffs(L, rng)
        fast = sht_inverse(c).values
        slow = naive_sht_inverse(c.coeffs, L)
        assert np.max(np.abs(fast - slow)) < 1e-11

    def test_single_harmonic_delta(self):
        # synthesizing Y_5^3 then analyzing must return the Kronecker delta
        L = 16
        c = np.zeros(L * L, dtype=np.complex128)
        c[coeff_index(5, 3)] = 1.0
        out = sht_forward(sht_inverse(SphereCoeffs(L, c))).coeffs
        assert abs(out[coeff_index(5, 3)] - 1.0) < 1e-13
        out[coeff_index(5, 3)] = 0.0
        assert np.max(np.abs(out)) < 1e-13


class TestRoundTrips:
    @pytest.mark.parametrize("L", [1, 2, 3, 4, 8, 16, 32, 64, 128])
    def test_coeff_roundtrip(self, L):
        for seed in range(20):
            rng = np.random.default_rng(1000 * L + seed)
            c = random_coeffs(L, rng)
            back = sht_forward(sht_inverse(c)).coeffs
            rel = np.max(np.abs(back - c.coeffs)) / np.max(np.abs(c.coeffs))
            assert rel < 1e-11, (L, seed, rel)

    def test_constant_field(self):
        L = 12
        grid = SphereGrid(L, np.ones((L, 2 * L - 1), dtype=np.complex128))
        c = sht_forward(grid).coeffs
        assert c[0] == pytest.approx(math.sqrt(4 * math.pi))
        assert np.max(np.abs(c[1:])) < 1e-13

    def test_cos_theta_field(self):
        L = 12
        thetas, _ = sphere_sampling(L)
        values = np.cos(thetas)[:, None] * np.ones((1, 2 * L - 1))
        c = sht_forward(SphereGrid(L, values.astype(np.complex128))).coeffs
        assert c[coeff_index(1, 0)] == pytest.approx(math.sqrt(4 * math.pi / 3))


class TestParseval:
    def test_energy_identity(self):
        L = 24
        rng = np.random.default_rng(42)
        c = random_coeffs(L, rng)
        grid = sht_inverse(c)
        from flaglets.quadrature import gauss_legendre

        w = gauss_legendre(L).weights
        dphi = 2 * np.pi / (2 * L - 1)
        grid_energy = float(np.sum(w[:, None] * np.abs(grid.values) ** 2) * dphi)
        coeff_energy = float(np.sum(np.abs(c.coeffs) ** 2))
        assert abs(grid_energy - coeff_energy) < 1e-10 * coeff_energy


class TestRealFields:
    def test_conjugate_symmetric_coeffs_give_real_field(self):
        L = 16
        rng = np.random.default_rng(5)
        c = np.zeros(L * L, dtype=np.complex128)
        for ell in range(L):
            c[coeff_index(ell, 0)] = rng.uniform(-1, 1)
            for m in range(1, ell + 1):
                v = rng.uniform(-1, 1) + 1j * rng.uniform(-1, 1)
                c[coeff_index(ell, m)] = v
                c[coeff_index(ell, -m)] = (-1) ** m * np.conj(v)
        values = sht_inverse(SphereCoeffs(L, c)).values
        assert np.max(np.abs(values.imag)) < 1e-12


class TestValidation:
    def test_rejects_bad_band_limit(self):
        with pytest.raises(ValueError):
            SphereGrid(0, np.zeros((0, 0)))
        with pytest.raises(ValueError):
            SphereCoeffs(-1, np.zeros(1))

    def test_rejects_wrong_shapes(self):
        with pytest.raises(ValueError):
            SphereGrid(4, np.zeros((4, 4)))
        with pytest.raises(ValueError):
            SphereCoeffs(4, np.zeros(15, dtype=np.complex128))

    def test_single_point_oracle(self):
        # conjugation symmetry Y_l^{-m} = (-1)^m conj(Y_l^m) at the same point
        v = ylm_point(8, 3, -2, 1.1, 0.7)
        w = ylm_point(8, 3, 2, 1.1, 0.7)
        assert v == pytest.approx(np.conj(w))
