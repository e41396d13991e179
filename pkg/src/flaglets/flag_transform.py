"""Fourier-Laguerre transform on the ball.

Separable composition of the spherical harmonic transform (per radial
shell) and the spherical Laguerre transform (per harmonic index).  Exact
in both directions for signals band-limited at (L, P).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .radial_laguerre import RadialParams, basis_matrix, radial_nodes
from .sphere_harmonics import (
    MAX_BAND_LIMIT,
    SphereCoeffs,
    SphereGrid,
    SpherePlan,
    get_plan,
    sht_forward,
    sht_inverse,
)

__all__ = ["BandLimits", "BallGrid", "FlagCoeffs", "FlagPlan", "flag_forward", "flag_inverse"]


@dataclass(frozen=True)
class BandLimits:
    """Angular band limit L, radial band limit P and radial scale tau."""

    L: int
    P: int
    tau: float = 1.0

    def __post_init__(self):
        if self.L < 1 or self.L > MAX_BAND_LIMIT:
            raise ValueError(f"angular band limit must be in [1, {MAX_BAND_LIMIT}], got {self.L}")
        if self.P < 1:
            raise ValueError(f"radial band limit must be >= 1, got {self.P}")
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ValueError(f"radial scale must be positive and finite, got {self.tau}")

    @property
    def radial(self) -> RadialParams:
        return RadialParams(self.P, self.tau)


@dataclass
class BallGrid:
    """Samples on the exact ball grid: (P shells, L colatitudes, 2L-1 longitudes)."""

    limits: BandLimits
    values: np.ndarray

    def __post_init__(self):
        L, P = self.limits.L, self.limits.P
        self.values = np.ascontiguousarray(self.values, dtype=np.complex128)
        if self.values.shape != (P, L, 2 * L - 1):
            raise ValueError(
                f"grid shape {self.values.shape} does not match limits (L={L}, P={P})"
            )


@dataclass
class FlagCoeffs:
    """Fourier-Laguerre coefficients, shape (P, L^2); flat angular index ell^2+ell+m."""

    limits: BandLimits
    coeffs: np.ndarray

    def __post_init__(self):
        L, P = self.limits.L, self.limits.P
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (P, L * L):
            raise ValueError(
                f"coefficient shape {self.coeffs.shape} does not match limits (L={L}, P={P})"
            )


class FlagPlan:
    """Precomputed quadrature rules and basis tables for one BandLimits.

    Immutable after construction; safe to share across transforms.
    """

    def __init__(self, limits: BandLimits):
        self.limits = limits
        self.sphere: SpherePlan = get_plan(limits.L)
        self.radii, self.radial_weights = radial_nodes(limits.radial)
        # K[p, i] = K_p(r_i)
        self.kbasis = basis_matrix(limits.radial, self.radii)
        # forward radial operator: (p, i) entries weight_i * K_p(r_i)
        self.kforward = self.kbasis * self.radial_weights[None, :]


_plan_cache: dict[BandLimits, FlagPlan] = {}


def get_flag_plan(limits: BandLimits) -> FlagPlan:
    plan = _plan_cache.get(limits)
    if plan is None:
        plan = _plan_cache[limits] = FlagPlan(limits)
    return plan


def flag_forward(grid: BallGrid, plan: FlagPlan | None = None) -> FlagCoeffs:
    """Forward Fourier-Laguerre transform; exact for band-limited signals."""
    limits = grid.limits
    if plan is None:
        plan = get_flag_plan(limits)
    L, P = limits.L, limits.P
    shell_coeffs = np.empty((P, L * L), dtype=np.complex128)
    for i in range(P):
        shell_coeffs[i] = sht_forward(SphereGrid(L, grid.values[i]), plan.sphere).coeffs
    return FlagCoeffs(limits, plan.kforward @ shell_coeffs)


def flag_inverse(coeffs: FlagCoeffs, plan: FlagPlan | None = None) -> BallGrid:
    """Inverse Fourier-Laguerre transform onto the exact ball grid."""
    limits = coeffs.limits
    if plan is None:
        plan = get_flag_plan(limits)
    L, P = limits.L, limits.P
    # radial synthesis at the sampling nodes, then per-shell angular synthesis
    shell_coeffs = plan.kbasis.T @ coeffs.coeffs  # (shells, L^2)
    values = np.empty((P, L, 2 * L - 1), dtype=np.complex128)
    for i in range(P):
        values[i] = sht_inverse(SphereCoeffs(L, shell_coeffs[i]), plan.sphere).values
    return BallGrid(limits, values)
