"""Flaglet analysis and synthesis on the ball, plus wavelet-domain denoising.

Wavelet coefficients are held as spatial BallGrids (the form in which
they are inspected and thresholded); windowing itself happens in
Fourier-Laguerre space.  With the multiresolution flag each scale is
rendered on the smallest exact grid containing its harmonic support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .flag_transform import BallGrid, BandLimits, FlagCoeffs, flag_forward, flag_inverse
from .kernel_tiling import FlagletKernels, TilingParams

__all__ = [
    "FlagletDecomposition",
    "flaglet_analyze",
    "flaglet_synthesize",
    "threshold_denoise",
]


@dataclass
class FlagletDecomposition:
    """Scaling grid plus one wavelet grid per (angular, radial) scale pair."""

    limits: BandLimits
    params: TilingParams
    scaling: BallGrid
    wavelets: dict[tuple[int, int], BallGrid]
    multires: bool

    def sample_count(self) -> int:
        n = self.scaling.values.size
        return n + sum(g.values.size for g in self.wavelets.values())

    def scale_energies(self) -> dict:
        """Coefficient energy per part, computed from the stored grids."""
        energies = {"scaling": _grid_energy(self.scaling)}
        for key, grid in self.wavelets.items():
            energies[key] = _grid_energy(grid)
        return energies


def _grid_energy(grid: BallGrid) -> float:
    """Quadrature estimate of the integral of |f|^2 over the ball."""
    from .quadrature import gauss_legendre
    from .radial_laguerre import radial_nodes

    L = grid.limits.L
    _, wr = radial_nodes(grid.limits.radial)
    wa = gauss_legendre(L).weights
    dphi = 2.0 * np.pi / (2 * L - 1)
    sq = np.abs(grid.values) ** 2
    return float(np.einsum("p,i,pij->", wr, wa, sq) * dphi)


def _window_coeffs(coeffs: np.ndarray, L: int, window: np.ndarray) -> np.ndarray:
    """Multiply (P, L^2) coefficients by an (L, P) window in (ell, p)."""
    ells = np.floor(np.sqrt(np.arange(L * L))).astype(int)
    return coeffs * window.T[:, ells]


def _truncate(coeffs: np.ndarray, limits: BandLimits, lj: int, pj: int) -> np.ndarray:
    return coeffs[:pj, : lj * lj].copy()


def _extend(coeffs: np.ndarray, sub: BandLimits, limits: BandLimits) -> np.ndarray:
    out = np.zeros((limits.P, limits.L * limits.L), dtype=np.complex128)
    out[: sub.P, : sub.L * sub.L] = coeffs
    return out


def flaglet_analyze(
    f: FlagCoeffs, kernels: FlagletKernels, multires: bool = False
) -> FlagletDecomposition:
    """Decompose Fourier-Laguerre coefficients into flaglet coefficient maps."""
    limits = f.limits
    if kernels.limits != limits:
        raise ValueError(
            f"kernel limits {kernels.limits} do not match signal limits {limits}"
        )
    L = limits.L

    def render(windowed: np.ndarray, lj: int, pj: int) -> BallGrid:
        if not multires:
            lj, pj = limits.L, limits.P
        sub = BandLimits(lj, pj, limits.tau)
        return flag_inverse(FlagCoeffs(sub, _truncate(windowed, limits, lj, pj)))

    # the residual scaling window is supported on the whole L-shaped
    # low-frequency region (all ell at small p and vice versa), so the
    # scaling part always stays at full band limits
    scaling = render(_window_coeffs(f.coeffs, L, kernels.phi), limits.L, limits.P)
    wavelets = {
        (j, jp): render(
            _window_coeffs(f.coeffs, L, kernels.psis[(j, jp)]),
            *kernels.band_limits(j, jp),
        )
        for j in kernels.j_range
        for jp in kernels.jp_range
    }
    return FlagletDecomposition(limits, kernels.params, scaling, wavelets, multires)


def flaglet_synthesize(d: FlagletDecomposition, kernels: FlagletKernels) -> FlagCoeffs:
    """Recombine flaglet coefficient maps (exact inverse of the analysis)."""
    limits = kernels.limits
    if d.limits != limits or d.params != kernels.params:
        raise ValueError("decomposition and kernels were built with different parameters")
    expected = {(j, jp) for j in kernels.j_range for jp in kernels.jp_range}
    if set(d.wavelets) != expected:
        raise ValueError("decomposition scale indices do not match the kernels")

    out = np.zeros((limits.P, limits.L * limits.L), dtype=np.complex128)

    def collect(grid: BallGrid, window: np.ndarray):
        part = _extend(flag_forward(grid).coeffs, grid.limits, limits)
        nonlocal out
        out += _window_coeffs(part, limits.L, window)

    collect(d.scaling, kernels.phi)
    for key, grid in d.wavelets.items():
        collect(grid, kernels.psis[key])
    return FlagCoeffs(limits, out)


def threshold_denoise(
    d: FlagletDecomposition, threshold: float, mode: str = "hard"
) -> FlagletDecomposition:
    """Shrink wavelet coefficient values; the scaling part passes through.

    hard: values with magnitude below the threshold are zeroed.
    soft: magnitudes are shrunk toward zero by the threshold.
    """
    if threshold < 0 or math.isnan(threshold):
        raise ValueError(f"threshold must be non-negative, got {threshold}")
    if mode not in ("hard", "soft"):
        raise ValueError(f"mode must be 'hard' or 'soft', got {mode!r}")

    wavelets = {}
    for key, grid in d.wavelets.items():
        v = grid.values
        mag = np.abs(v)
        if mode == "hard":
            out = np.where(mag >= threshold, v, 0.0)
        else:
            with np.errstate(invalid="ignore", divide="ignore"):
                shrink = np.where(mag > 0, np.maximum(1.0 - threshold / mag, 0.0), 0.0)
            out = v * shrink
        wavelets[key] = BallGrid(grid.limits, out)
    scaling = BallGrid(d.scaling.limits, d.scaling.values.copy())
    return FlagletDecomposition(d.limits, d.params, scaling, wavelets, d.multires)
