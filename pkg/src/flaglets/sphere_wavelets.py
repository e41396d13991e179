"""Axisymmetric scale-discretised wavelet transform on the sphere.

Analysis multiplies harmonic coefficients by the tiling windows and maps
every part to the spatial grid; with the multiresolution flag each scale
is held at its effective band limit (the smallest grid containing the
window's support).  Synthesis re-projects each part and re-applies its
window; admissibility makes the round trip exact.
"""

from __future__ import annotations

import numpy as np

from .kernel_tiling import SphereKernels
from .sphere_harmonics import SphereCoeffs, SphereGrid, sht_forward, sht_inverse

__all__ = ["SphereDecomposition", "sphere_analyze", "sphere_synthesize"]


from dataclasses import dataclass


@dataclass
class SphereDecomposition:
    """Scaling grid plus one wavelet grid per scale j."""

    L: int
    lam: float
    j0: int
    scaling: SphereGrid
    wavelets: dict[int, SphereGrid]
    multires: bool

    def sample_count(self) -> int:
        n = self.scaling.values.size
        return n + sum(g.values.size for g in self.wavelets.values())


def _truncate(coeffs: np.ndarray, L: int, L_out: int) -> np.ndarray:
    """Restrict flat (ell^2+ell+m)-indexed coefficients to a lower band limit."""
    if L_out == L:
        return coeffs.copy()
    return coeffs[: L_out * L_out].copy()


def _extend(coeffs: np.ndarray, L_in: int, L: int) -> np.ndarray:
    if L_in == L:
        return coeffs
    out = np.zeros(L * L, dtype=np.complex128)
    out[: L_in * L_in] = coeffs
    return out


def _window(coeffs: np.ndarray, L: int, win: np.ndarray) -> np.ndarray:
    """Multiply coefficients by a per-degree window win[ell]."""
    ells = np.floor(np.sqrt(np.arange(L * L))).astype(int)
    return coeffs * win[ells]


def sphere_analyze(
    f: SphereCoeffs, kernels: SphereKernels, multires: bool = False
) -> SphereDecomposition:
    """Decompose harmonic coefficients into scaling and wavelet grids."""
    L = f.L
    if kernels.L != L:
        raise ValueError(f"kernel band limit {kernels.L} does not match signal {L}")

    def render(windowed: np.ndarray, band: int) -> SphereGrid:
        band = band if multires else L
        return sht_inverse(SphereCoeffs(band, _truncate(windowed, L, band)))

    scaling = render(_window(f.coeffs, L, kernels.eta), kernels.scaling_band_limit)
    wavelets = {
        j: render(_window(f.coeffs, L, kappa), kernels.band_limit(j))
        for j, kappa in enumerate(kernels.kappas, start=kernels.j0)
    }
    return SphereDecomposition(L, kernels.params.lam, kernels.j0, scaling, wavelets, multires)


def sphere_synthesize(d: SphereDecomposition, kernels: SphereKernels) -> SphereCoeffs:
    """Recombine a decomposition into harmonic coefficients (exact inverse)."""
    L = kernels.L
    if d.L != L or d.j0 != kernels.j0 or d.lam != kernels.params.lam:
        raise ValueError("decomposition and kernels were built with different parameters")
    if set(d.wavelets) != set(range(kernels.j0, kernels.jmax + 1)):
        raise ValueError("decomposition scale indices do not match the kernels")

    out = np.zeros(L * L, dtype=np.complex128)

    def collect(grid: SphereGrid, win: np.ndarray):
        part = _extend(sht_forward(grid).coeffs, grid.L, L)
        nonlocal out
        out += _window(part, L, win)

    collect(d.scaling, kernels.eta)
    for j, kappa in enumerate(kernels.kappas, start=kernels.j0):
        collect(d.wavelets[j], kappa)
    return SphereCoeffs(L, out)
