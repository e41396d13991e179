"""Exact harmonic and wavelet transforms on the sphere and the ball.

The library provides the Fourier-Laguerre transform on the ball (a
separable composition of an exact spherical harmonic transform and an
exact spherical Laguerre transform on the radial half-line) together
with axisymmetric scale-discretised wavelets on the sphere and their 3D
counterparts on the ball, "flaglets".  All transforms round-trip to
floating-point precision for band-limited signals.
"""

from .quadrature import QuadRule, gauss_legendre, gauss_laguerre_gen
from .sphere_harmonics import (
    SphereGrid,
    SphereCoeffs,
    sphere_sampling,
    assoc_legendre_table,
    sht_forward,
    sht_inverse,
)
from .radial_laguerre import (
    RadialParams,
    RadialCoeffs,
    laguerre_basis,
    radial_nodes,
    slag_forward,
    slag_inverse,
    tau_for_boundary,
)
from .flag_transform import (
    BandLimits,
    BallGrid,
    FlagCoeffs,
    FlagPlan,
    flag_forward,
    flag_inverse,
)
from .kernel_tiling import (
    TilingParams,
    SphereKernels,
    FlagletKernels,
    smooth_bump,
    k_lambda,
    kappa_eta,
    build_sphere_kernels,
    build_flaglet_kernels,
)
from .sphere_wavelets import SphereDecomposition, sphere_analyze, sphere_synthesize
from .flaglet_transform import (
    FlagletDecomposition,
    flaglet_analyze,
    flaglet_synthesize,
    threshold_denoise,
)
from .io_container import write_container, read_container

__all__ = [
    "QuadRule",
    "gauss_legendre",
    "gauss_laguerre_gen",
    "SphereGrid",
    "SphereCoeffs",
    "sphere_sampling",
    "assoc_legendre_table",
    "sht_forward",
    "sht_inverse",
    "RadialParams",
    "RadialCoeffs",
    "laguerre_basis",
    "radial_nodes",
    "slag_forward",
    "slag_inverse",
    "tau_for_boundary",
    "BandLimits",
    "BallGrid",
    "FlagCoeffs",
    "FlagPlan",
    "flag_forward",
    "flag_inverse",
    "TilingParams",
    "SphereKernels",
    "FlagletKernels",
    "smooth_bump",
    "k_lambda",
    "kappa_eta",
    "build_sphere_kernels",
    "build_flaglet_kernels",
    "SphereDecomposition",
    "sphere_analyze",
    "sphere_synthesize",
    "FlagletDecomposition",
    "flaglet_analyze",
    "flaglet_synthesize",
    "threshold_denoise",
    "write_container",
    "read_container",
]

__version__ = "0.1.0"
