"""Exact spherical harmonic transform on a Gauss-Legendre grid.

Sampling: L Gauss-Legendre colatitudes (theta descending, x = cos(theta)
ascending) by 2L-1 equispaced longitudes.  The longitudinal sums are done
by FFT, the colatitude projection by Gauss-Legendre quadrature, which is
exact for the degree <= 2L-2 Legendre integrands arising for signals
band-limited at L.

Conventions: orthonormal harmonics with the Condon-Shortley phase folded
into the normalized associated Legendre functions,
Y_lm(theta, phi) = Ptilde_l^m(cos theta) e^{i m phi} / sqrt(2 pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import gauss_legendre

__all__ = [
    "MAX_BAND_LIMIT",
    "SphereGrid",
    "SphereCoeffs",
    "sphere_sampling",
    "assoc_legendre_table",
    "legendre_matrix",
    "sht_forward",
    "sht_inverse",
    "coeff_index",
]

MAX_BAND_LIMIT = 4096

_RESCALE_THRESHOLD = 1e250
_RESCALE_LOG = math.log(1e250)


def coeff_index(ell: int, m: int) -> int:
    """Flat index of the (ell, m) coefficient: ell^2 + ell + m."""
    return ell * ell + ell + m


@dataclass
class SphereGrid:
    """Samples of a function on the exact sphere grid at band limit L.

    values has shape (L, 2L-1), row i holding the equispaced longitudes at
    colatitude theta_i (theta descending).
    """

    L: int
    values: np.ndarray

    def __post_init__(self):
        if not 1 <= self.L <= MAX_BAND_LIMIT:
            raise ValueError(f"band limit must be in [1, {MAX_BAND_LIMIT}], got {self.L}")
        self.values = np.ascontiguousarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.L, 2 * self.L - 1):
            raise ValueError(
                f"grid shape {self.values.shape} does not match band limit {self.L}"
            )


@dataclass
class SphereCoeffs:
    """Spherical harmonic coefficients, flat index ell^2 + ell + m."""

    L: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 1 <= self.L <= MAX_BAND_LIMIT:
            raise ValueError(f"band limit must be in [1, {MAX_BAND_LIMIT}], got {self.L}")
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.L * self.L,):
            raise ValueError(
                f"coefficient length {self.coeffs.shape} does not match band limit {self.L}"
            )


def sphere_sampling(L: int):
    """Colatitudes and longitudes of the exact grid at band limit L.

    Returns (thetas, phis) with thetas descending (x = cos theta ascending,
    matching the Gauss-Legendre node order) and phis = 2 pi k / (2L - 1).
    """
    if L < 1 or L > MAX_BAND_LIMIT:
        raise ValueError(f"band limit must be in [1, {MAX_BAND_LIMIT}], got {L}")
    rule = gauss_legendre(L)
    thetas = np.arccos(rule.nodes)
    phis = 2.0 * np.pi * np.arange(2 * L - 1) / (2 * L - 1)
    return thetas, phis


def legendre_matrix(L: int, m: int, xs: np.ndarray) -> np.ndarray:
    """Normalized associated Legendre values Ptilde_l^m for l = m..L-1.

    Returns shape (L - m, len(xs)).  Normalization is such that
    int_{-1}^{1} Ptilde_l^m Ptilde_l'^m dx = delta_{ll'}, with the
    Condon-Shortley phase included.  The sectoral seed is built
    multiplicatively with a per-point compensation exponent so that high-m
    values near the poles underflow gracefully to zero instead of
    poisoning the recurrence.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=np.float64))
    npts = xs.size
    sin2 = np.maximum(0.0, 1.0 - xs * xs)
    sinx = np.sqrt(sin2)

    out = np.zeros((L - m, npts))

    # sectoral seed Ptilde_m^m, compensated: true = u * e^{c}
    u = np.full(npts, 1.0 / math.sqrt(2.0))
    c = np.zeros(npts)
    for k in range(1, m + 1):
        u = u * (-math.sqrt((2 * k + 1) / (2.0 * k))) * sinx
        small = (np.abs(u) < 1e-250) & (u != 0.0)
        if np.any(small):
            u = np.where(small, u * _RESCALE_THRESHOLD, u)
            c = c - np.where(small, _RESCALE_LOG, 0.0)

    with np.errstate(under="ignore"):
        out[0] = u * np.exp(c)
    if m + 1 < L:
        u_prev, u_cur = u, math.sqrt(2 * m + 3.0) * xs * u
        with np.errstate(under="ignore"):
            out[1] = u_cur * np.exp(c)
        for ell in range(m + 2, L):
            a = math.sqrt((4.0 * ell * ell - 1.0) / (ell * ell - m * m))
            b = math.sqrt(((ell - 1.0) ** 2 - m * m) / (4.0 * (ell - 1.0) ** 2 - 1.0))
            u_prev, u_cur = u_cur, a * (xs * u_cur - b * u_prev)
            big = np.abs(u_cur) > _RESCALE_THRESHOLD
            if np.any(big):
                f = np.where(big, 1.0 / _RESCALE_THRESHOLD, 1.0)
                u_cur = u_cur * f
                u_prev = u_prev * f
                c = c + np.where(big, _RESCALE_LOG, 0.0)
            with np.errstate(under="ignore"):
                out[ell - m] = u_cur * np.exp(c)
    return out


def assoc_legendre_table(L: int, x: float) -> np.ndarray:
    """Table of Ptilde_l^m(x) for 0 <= m <= l < L at a single point.

    Returns a flat array of length L^2 addressed by l * L + m; entries
    with m > l are zero.
    """
    if L < 1 or L > MAX_BAND_LIMIT:
        raise ValueError(f"band limit must be in [1, {MAX_BAND_LIMIT}], got {L}")
    if abs(x) > 1.0:
        raise ValueError(f"argument must satisfy |x| <= 1, got {x}")
    table = np.zeros(L * L)
    xs = np.array([float(x)])
    for m in range(L):
        col = legendre_matrix(L, m, xs)[:, 0]
        ells = np.arange(m, L)
        table[ells * L + m] = col
    return table


class SpherePlan:
    """Cached quadrature rule and per-m Legendre matrices for one L."""

    # full per-m tables are O(L^3/2) doubles; beyond this, recompute per call
    _CACHE_LIMIT = 256

    def __init__(self, L: int):
        if L < 1 or L > MAX_BAND_LIMIT:
            raise ValueError(f"band limit must be in [1, {MAX_BAND_LIMIT}], got {L}")
        self.L = L
        self.rule = gauss_legendre(L)
        self._tables = [None] * L if L <= self._CACHE_LIMIT else None

    def legendre(self, m: int) -> np.ndarray:
        if self._tables is None:
            return legendre_matrix(self.L, m, self.rule.nodes)
        if self._tables[m] is None:
            self._tables[m] = legendre_matrix(self.L, m, self.rule.nodes)
        return self._tables[m]


_plan_cache: dict[int, SpherePlan] = {}


def get_plan(L: int) -> SpherePlan:
    plan = _plan_cache.get(L)
    if plan is None:
        plan = _plan_cache[L] = SpherePlan(L)
    return plan


def sht_forward(grid: SphereGrid, plan: SpherePlan | None = None) -> SphereCoeffs:
    """Forward spherical harmonic transform, exact for band-limited input.

    f_lm = sum_i sum_k w_i (2 pi / (2L-1)) f(theta_i, phi_k) conj(Y_lm),
    with the k-sum carried out by FFT.
    """
    L = grid.L
    if plan is None:
        plan = get_plan(L)
    nphi = 2 * L - 1
    fm = np.fft.fft(grid.values, axis=1) * (2.0 * np.pi / nphi)
    wfm = plan.rule.weights[:, None] * fm

    coeffs = np.zeros(L * L, dtype=np.complex128)
    for m in range(L):
        pm = plan.legendre(m)  # (L - m, L)
        ells = np.arange(m, L)
        coeffs[ells * ells + ells + m] = pm @ wfm[:, m] / math.sqrt(2.0 * np.pi)
        if m > 0:
            sign = -1.0 if m % 2 else 1.0
            coeffs[ells * ells + ells - m] = (
                sign * (pm @ wfm[:, nphi - m]) / math.sqrt(2.0 * np.pi)
            )
    return SphereCoeffs(L, coeffs)


def sht_inverse(coeffs: SphereCoeffs, plan: SpherePlan | None = None) -> SphereGrid:
    """Inverse spherical harmonic transform onto the exact grid."""
    L = coeffs.L
    if plan is None:
        plan = get_plan(L)
    nphi = 2 * L - 1
    g = np.zeros((L, nphi), dtype=np.complex128)
    for m in range(L):
        pm = plan.legendre(m)
        ells = np.arange(m, L)
        g[:, m] = pm.T @ coeffs.coeffs[ells * ells + ells + m]
        if m > 0:
            sign = -1.0 if m % 2 else 1.0
            g[:, nphi - m] = sign * (pm.T @ coeffs.coeffs[ells * ells + ells - m])
    values = np.fft.ifft(g, axis=1) * (nphi / math.sqrt(2.0 * np.pi))
    return SphereGrid(L, values)
