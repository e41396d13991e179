"""Gaussian quadrature rules underpinning the exact transforms.

Two families are provided: Gauss-Legendre on [-1, 1] (used for the
colatitude sampling on the sphere) and generalized Gauss-Laguerre on
[0, inf) with weight x^alpha e^{-x} (used for the radial sampling on the
ball, alpha = 2 matching the r^2 volume element).

Laguerre weights are returned in *scaled* form, w_i * e^{x_i}, computed
without overflow so they can be applied directly to integrands that carry
their own exponential damping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

__all__ = ["QuadRule", "gauss_legendre", "gauss_laguerre_gen", "MAX_NODES"]

MAX_NODES = 100_000

_NEWTON_TOL = 1e-15
_NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class QuadRule:
    """A Gaussian quadrature rule.

    Attributes:
        kind: "legendre" or "laguerre".
        alpha: Laguerre exponent (0 for Legendre rules).
        nodes: Strictly increasing abscissae, shape (n,).
        weights: Quadrature weights, shape (n,).  For Laguerre rules these
            are the scaled weights w_i * e^{x_i}.
    """

    kind: str
    alpha: int
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def n(self) -> int:
        return self.nodes.size


def _legendre_value_deriv(n: int, x: np.ndarray):
    """Evaluate P_n and P_n' at x via the three-term recurrence."""
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(2, n + 1):
        p_prev, p = p, ((2 * k - 1) * x * p - (k - 1) * p_prev) / k
    # derivative from P_n and P_{n-1}
    dp = n * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


def gauss_legendre(n: int) -> QuadRule:
    """Gauss-Legendre rule with n nodes on [-1, 1].

    Nodes are the roots of the degree-n Legendre polynomial, found by
    Newton iteration from the classical cosine initial guesses; weights
    follow from the derivative formula w = 2 / ((1 - x^2) P_n'(x)^2).
    Exact for polynomials of degree <= 2n - 1.
    """
    if n < 1 or n > MAX_NODES:
        raise ValueError(f"node count must be in [1, {MAX_NODES}], got {n}")
    if n == 1:
        return QuadRule("legendre", 0, np.zeros(1), np.full(1, 2.0))

    i = np.arange(n, dtype=np.float64)
    x = np.cos(np.pi * (i + 0.75) / (n + 0.5))  # descending initial guesses
    for _ in range(_NEWTON_MAX_ITER):
        p, dp = _legendre_value_deriv(n, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < _NEWTON_TOL:
            break
    else:
        raise RuntimeError("Gauss-Legendre Newton iteration failed to converge")

    # enforce exact symmetry of the rule about zero
    x = 0.5 * (x - x[::-1])
    if n % 2 == 1:
        x[n // 2] = 0.0
    _, dp = _legendre_value_deriv(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)

    order = np.argsort(x)
    return QuadRule("legendre", 0, np.ascontiguousarray(x[order]),
                    np.ascontiguousarray(w[order]))


def _laguerre_weighted_recurrence(n: int, alpha: int, x: np.ndarray):
    """Run the orthonormal weighted Laguerre recurrence up to order n.

    Works with the functions phi_k(x) = N_k L_k^{(alpha)}(x) e^{-x/2},
    which stay O(1) where the raw polynomials overflow and the damping
    underflows.  Values are carried as stored * e^{c} with a per-point
    compensation exponent c, rescaled whenever the stored magnitude grows
    past 1e250.

    Returns (u_n, u_nm1, c, christoffel) where u_n, u_nm1 are the stored
    values of phi_n and phi_{n-1}, c the compensation exponents, and
    christoffel the stably-accumulated sum_{k<n} phi_k(x)^2 expressed as
    (T, c) with sum = T * e^{2c}... concretely the function returns the sum
    already folded: sum_{k<n} phi_k^2 = christoffel * e^{2c}.
    """
    x = np.asarray(x, dtype=np.float64)
    # true value = stored * e^{c}; start phi_0 = e^{-x/2} / sqrt(Gamma(alpha+1))
    c = -0.5 * x
    u_prev = np.zeros_like(x)
    u = np.full_like(x, 1.0 / math.sqrt(math.gamma(alpha + 1)))
    christoffel = u * u  # at current scale
    for k in range(1, n + 1):
        a_km1 = 2.0 * (k - 1) + alpha + 1.0
        b_km1 = math.sqrt((k - 1) * (k - 1 + alpha)) if k >= 2 else 0.0
        b_k = math.sqrt(k * (k + alpha))
        u_prev, u = u, ((x - a_km1) * u - b_km1 * u_prev) / b_k
        big = np.abs(u) > 1e140
        if np.any(big):
            f = np.where(big, 1e-140, 1.0)
            u = u * f
            u_prev = u_prev * f
            christoffel = christoffel * (f * f)
            c = c + np.where(big, np.log(1e140), 0.0)
        if k < n:
            christoffel = christoffel + u * u
    return u, u_prev, c, christoffel


def gauss_laguerre_gen(n: int, alpha: int) -> QuadRule:
    """Generalized Gauss-Laguerre rule for the weight x^alpha e^{-x}.

    Nodes come from the symmetric tridiagonal Jacobi matrix
    (Golub-Welsch), then each is polished by Newton iteration on the
    weighted orthonormal Laguerre function to machine precision.  The
    returned weights are the scaled weights w_i * e^{x_i}, obtained from
    the Christoffel sum of weighted basis functions, which avoids the
    overflow/underflow pair affecting raw weights for n of a few hundred
    and up.
    """
    if alpha not in (0, 1, 2):
        raise ValueError(f"alpha must be 0, 1 or 2, got {alpha}")
    if n < 1 or n > MAX_NODES:
        raise ValueError(f"node count must be in [1, {MAX_NODES}], got {n}")

    if n == 1:
        x = np.array([alpha + 1.0])
    else:
        k = np.arange(n, dtype=np.float64)
        diag = 2.0 * k + alpha + 1.0
        off = np.sqrt(k[1:] * (k[1:] + alpha))
        x = eigh_tridiagonal(diag, off, eigvals_only=True)

    # Newton polish on phi_n; the recurrence polynomials carry a (-1)^k sign
    # relative to the classical Laguerre family, hence the + on the b_n term:
    # x phi_n' = (n - x/2) phi_n + b_n phi_{n-1}
    b_n = math.sqrt(n * (n + alpha))
    # converge to 1e-15 relative or to the evaluation noise floor (steps
    # enter a limit cycle of a few ulp once the roots are exhausted)
    prev_step = np.inf
    for it in range(_NEWTON_MAX_ITER):
        u_n, u_nm1, _, _ = _laguerre_weighted_recurrence(n, alpha, x)
        dphi = ((n - 0.5 * x) * u_n + b_n * u_nm1) / x
        dx = u_n / dphi
        x = x - dx
        step = float(np.max(np.abs(dx) / (1.0 + x)))
        if step <= _NEWTON_TOL or (it >= 1 and step >= 0.5 * prev_step):
            break
        prev_step = step
    else:
        bad = int(np.argmax(np.abs(dx) / (1.0 + x)))
        raise RuntimeError(f"Laguerre root refinement failed to converge at node {bad}")
    if not np.all(np.abs(dx) <= 1e-11 * (1.0 + x)):
        bad = int(np.argmax(np.abs(dx) / (1.0 + x)))
        raise RuntimeError(f"Laguerre root refinement failed to converge at node {bad}")

    _, _, c, christoffel = _laguerre_weighted_recurrence(n, alpha, x)
    if np.any(christoffel <= 0) or not np.all(np.isfinite(christoffel)):
        bad = int(np.argmin(christoffel))
        raise RuntimeError(f"Laguerre weight computation failed at node {bad}")
    # sum phi_k^2 = christoffel * e^{2c};  scaled weight = 1 / sum phi_k^2
    log_w = -(np.log(christoffel) + 2.0 * c)
    w_scaled = np.exp(log_w)

    order = np.argsort(x)
    return QuadRule("laguerre", alpha, np.ascontiguousarray(x[order]),
                    np.ascontiguousarray(w_scaled[order]))
