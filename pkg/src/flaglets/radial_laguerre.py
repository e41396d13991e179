"""Exact spherical Laguerre transform on the radial half-line.

Basis: K_p(r) = sqrt(p! / (p+2)!) tau^{-3/2} e^{-r/(2 tau)} L_p^{(2)}(r / tau),
orthonormal against the r^2 dr measure.  Sampling at the scaled
generalized Gauss-Laguerre nodes makes the forward projection exact for
signals band-limited at P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import gauss_laguerre_gen

__all__ = [
    "RadialParams",
    "RadialCoeffs",
    "laguerre_basis",
    "basis_matrix",
    "radial_nodes",
    "slag_forward",
    "slag_inverse",
    "tau_for_boundary",
]

_RESCALE_THRESHOLD = 1e250
_RESCALE_LOG = math.log(1e250)


@dataclass(frozen=True)
class RadialParams:
    """Radial band limit P and scale tau."""

    P: int
    tau: float = 1.0

    def __post_init__(self):
        if self.P < 1:
            raise ValueError(f"radial band limit must be >= 1, got {self.P}")
        if not (self.tau > 0 and math.isfinite(self.tau)):
            raise ValueError(f"radial scale must be positive and finite, got {self.tau}")


@dataclass
class RadialCoeffs:
    """Spherical Laguerre coefficients f_p, p = 0..P-1."""

    params: RadialParams
    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if self.coeffs.shape != (self.params.P,):
            raise ValueError(
                f"coefficient length {self.coeffs.shape} does not match P={self.params.P}"
            )


def basis_matrix(params: RadialParams, radii: np.ndarray) -> np.ndarray:
    """Evaluate K_p at the given radii; returns shape (P, len(radii)).

    The damping e^{-x/2} is folded into the recurrence with a per-point
    compensation exponent, keeping the weighted values representable up to
    P of several hundred where the bare polynomial would overflow.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    if np.any(radii < 0):
        raise ValueError("radii must be non-negative")
    P, tau = params.P, params.tau
    x = radii / tau
    out = np.zeros((P, radii.size))

    # weighted normalized recurrence; true value = u * e^{c}
    c = -0.5 * x
    u_prev = np.zeros_like(x)
    u = np.full_like(x, 1.0 / math.sqrt(2.0))  # N_0 L_0 = 1/sqrt(0!->2!)
    with np.errstate(under="ignore"):
        out[0] = u * np.exp(c)
    for p in range(1, P):
        # L_p = ((2p+1-x) L_{p-1} - (p+1) L_{p-2}) / p, prefactors folded in
        r1 = math.sqrt(p / (p + 2.0))          # N_p / N_{p-1}
        r2 = math.sqrt(p * (p - 1.0) / ((p + 2.0) * (p + 1.0)))  # N_p / N_{p-2}
        u_prev, u = u, (r1 * (2 * p + 1 - x) * u - r2 * (p + 1) * u_prev) / p
        big = np.abs(u) > _RESCALE_THRESHOLD
        if np.any(big):
            f = np.where(big, 1.0 / _RESCALE_THRESHOLD, 1.0)
            u = u * f
            u_prev = u_prev * f
            c = c + np.where(big, _RESCALE_LOG, 0.0)
        with np.errstate(under="ignore"):
            out[p] = u * np.exp(c)
    return out * tau ** -1.5


def laguerre_basis(params: RadialParams, r: float) -> np.ndarray:
    """Basis values K_0(r) .. K_{P-1}(r) at a single radius."""
    if r < 0:
        raise ValueError(f"radius must be non-negative, got {r}")
    return basis_matrix(params, np.array([float(r)]))[:, 0]


def radial_nodes(params: RadialParams):
    """Sampling radii and effective quadrature weights.

    Returns (radii, weights) with radii = tau * x_i for Gauss-Laguerre
    nodes x_i (alpha = 2) and weights = tau^3 * scaled weights, so that
    f_p = sum_i weights_i f(r_i) K_p(r_i) exactly for band-limited f.
    """
    rule = gauss_laguerre_gen(params.P, 2)
    return params.tau * rule.nodes, params.tau ** 3 * rule.weights


def tau_for_boundary(P: int, boundary: float) -> float:
    """Radial scale placing the outermost sampling node at `boundary`."""
    if boundary <= 0:
        raise ValueError(f"boundary radius must be positive, got {boundary}")
    rule = gauss_laguerre_gen(P, 2)
    return boundary / rule.nodes[-1]


def slag_forward(samples: np.ndarray, params: RadialParams) -> RadialCoeffs:
    """Project samples taken at the radial_nodes radii onto the basis."""
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.shape != (params.P,):
        raise ValueError(
            f"expected {params.P} node samples, got shape {samples.shape}"
        )
    radii, weights = radial_nodes(params)
    basis = basis_matrix(params, radii)
    return RadialCoeffs(params, basis @ (weights * samples))


def slag_inverse(coeffs: RadialCoeffs, radii: np.ndarray) -> np.ndarray:
    """Synthesize f(r) = sum_p f_p K_p(r) at arbitrary radii."""
    radii = np.atleast_1d(np.asarray(radii, dtype=np.float64))
    basis = basis_matrix(coeffs.params, radii)
    return coeffs.coeffs @ basis
