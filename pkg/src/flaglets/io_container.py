"""FLG1 binary container: bit-exact serialization of every library object.

Layout (all integers u32 little-endian, all reals IEEE-754 binary64
little-endian, complex values interleaved re, im):

    magic   4 bytes  "FLG1"
    version u32      currently 1
    kind    u32      1 SphereGrid, 2 SphereCoeffs, 3 BallGrid,
                     4 FlagCoeffs, 5 SphereKernels, 6 FlagletKernels,
                     7 Decomposition
    header  kind-specific fixed fields (see _HEADERS below)
    payload float64 array data, in the exact in-memory layout of the type

Decompositions (kind 7) carry a flags word: bit 0 = multiresolution
storage, bit 1 = sphere decomposition (P, nu, tau unused and written as
zero) rather than ball decomposition.
"""

from __future__ import annotations

import io
import os
import struct

import numpy as np

from .flag_transform import BallGrid, BandLimits, FlagCoeffs
from .flaglet_transform import FlagletDecomposition
from .kernel_tiling import FlagletKernels, SphereKernels, TilingParams
from .sphere_harmonics import SphereCoeffs, SphereGrid
from .sphere_wavelets import SphereDecomposition

__all__ = [
    "ContainerError",
    "MagicError",
    "VersionError",
    "TruncatedError",
    "LengthMismatchError",
    "KindError",
    "write_container",
    "read_container",
]

MAGIC = b"FLG1"
VERSION = 1

KIND_SPHERE_GRID = 1
KIND_SPHERE_COEFFS = 2
KIND_BALL_GRID = 3
KIND_FLAG_COEFFS = 4
KIND_SPHERE_KERNELS = 5
KIND_FLAGLET_KERNELS = 6
KIND_DECOMPOSITION = 7

_FLAG_MULTIRES = 1
_FLAG_SPHERE = 2


class ContainerError(Exception):
    """Base error for FLG1 reading/writing."""


class MagicError(ContainerError):
    pass


class VersionError(ContainerError):
    pass


class TruncatedError(ContainerError):
    pass


class LengthMismatchError(ContainerError):
    pass


class KindError(ContainerError):
    pass


def _read_exact(source, n: int, what: str) -> bytes:
    data = source.read(n)
    if len(data) != n:
        raise TruncatedError(f"{what}: expected {n} bytes, got {len(data)}")
    return data


def _complex_bytes(a: np.ndarray) -> bytes:
    return np.ascontiguousarray(a, dtype="<c16").tobytes()


def _real_bytes(a: np.ndarray) -> bytes:
    return np.ascontiguousarray(a, dtype="<f8").tobytes()


def _read_complex(source, count: int, what: str) -> np.ndarray:
    raw = _read_exact(source, 16 * count, what)
    return np.frombuffer(raw, dtype="<c16").astype(np.complex128)


def _read_real(source, count: int, what: str) -> np.ndarray:
    raw = _read_exact(source, 8 * count, what)
    return np.frombuffer(raw, dtype="<f8").astype(np.float64)


def write_container(obj, sink) -> int:
    """Serialize an object to a binary sink; returns the byte count written.

    `sink` may be a file-like object opened in binary mode or a path.
    """
    if isinstance(sink, (str, bytes, os.PathLike)):
        with open(sink, "wb") as fh:
            return write_container(obj, fh)

    buf = io.BytesIO()
    buf.write(MAGIC)
    buf.write(struct.pack("<I", VERSION))

    if isinstance(obj, SphereGrid):
        buf.write(struct.pack("<II", KIND_SPHERE_GRID, obj.L))
        buf.write(_complex_bytes(obj.values))
    elif isinstance(obj, SphereCoeffs):
        buf.write(struct.pack("<II", KIND_SPHERE_COEFFS, obj.L))
        buf.write(_complex_bytes(obj.coeffs))
    elif isinstance(obj, BallGrid):
        buf.write(struct.pack("<IIId", KIND_BALL_GRID, obj.limits.L, obj.limits.P, obj.limits.tau))
        buf.write(_complex_bytes(obj.values))
    elif isinstance(obj, FlagCoeffs):
        buf.write(struct.pack("<IIId", KIND_FLAG_COEFFS, obj.limits.L, obj.limits.P, obj.limits.tau))
        buf.write(_complex_bytes(obj.coeffs))
    elif isinstance(obj, SphereKernels):
        buf.write(struct.pack("<IIId", KIND_SPHERE_KERNELS, obj.L, obj.j0, obj.params.lam))
        buf.write(_real_bytes(obj.eta))
        for kappa in obj.kappas:
            buf.write(_real_bytes(kappa))
    elif isinstance(obj, FlagletKernels):
        p = obj.params
        buf.write(
            struct.pack(
                "<IIIIIdd",
                KIND_FLAGLET_KERNELS,
                obj.limits.L,
                obj.limits.P,
                p.j0_ang,
                p.j0_rad,
                p.lam,
                p.nu,
            )
        )
        buf.write(struct.pack("<d", obj.limits.tau))
        buf.write(_real_bytes(obj.phi))
        for j in obj.j_range:
            for jp in obj.jp_range:
                buf.write(_real_bytes(obj.psis[(j, jp)]))
    elif isinstance(obj, SphereDecomposition):
        flags = _FLAG_SPHERE | (_FLAG_MULTIRES if obj.multires else 0)
        buf.write(
            struct.pack(
                "<IIIIIIddd",
                KIND_DECOMPOSITION,
                obj.L,
                0,
                obj.j0,
                0,
                flags,
                obj.lam,
                0.0,
                0.0,
            )
        )
        buf.write(_complex_bytes(obj.scaling.values))
        for j in sorted(obj.wavelets):
            buf.write(_complex_bytes(obj.wavelets[j].values))
    elif isinstance(obj, FlagletDecomposition):
        p = obj.params
        flags = _FLAG_MULTIRES if obj.multires else 0
        buf.write(
            struct.pack(
                "<IIIIIIddd",
                KIND_DECOMPOSITION,
                obj.limits.L,
                obj.limits.P,
                p.j0_ang,
                p.j0_rad,
                flags,
                p.lam,
                p.nu,
                obj.limits.tau,
            )
        )
        buf.write(_complex_bytes(obj.scaling.values))
        for key in sorted(obj.wavelets):
            buf.write(_complex_bytes(obj.wavelets[key].values))
    else:
        raise KindError(f"object of type {type(obj).__name__} is not serializable")

    data = buf.getvalue()
    try:
        sink.write(data)
    except OSError as exc:
        raise ContainerError(f"write failed: {exc}") from exc
    return len(data)


def read_container(source):
    """Read and validate an FLG1 container; returns the deserialized object.

    `source` may be a binary file-like object or a path.
    """
    if isinstance(source, (str, bytes, os.PathLike)):
        with open(source, "rb") as fh:
            return read_container(fh)

    magic = _read_exact(source, 4, "magic")
    if magic != MAGIC:
        raise MagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    (version,) = struct.unpack("<I", _read_exact(source, 4, "version"))
    if version != VERSION:
        raise VersionError(f"unsupported version {version}")
    (kind,) = struct.unpack("<I", _read_exact(source, 4, "kind"))

    if kind == KIND_SPHERE_GRID:
        (L,) = struct.unpack("<I", _read_exact(source, 4, "header"))
        vals = _read_complex(source, L * (2 * L - 1), "payload")
        obj = SphereGrid(L, vals.reshape(L, 2 * L - 1))
    elif kind == KIND_SPHERE_COEFFS:
        (L,) = struct.unpack("<I", _read_exact(source, 4, "header"))
        obj = SphereCoeffs(L, _read_complex(source, L * L, "payload"))
    elif kind in (KIND_BALL_GRID, KIND_FLAG_COEFFS):
        L, P, tau = struct.unpack("<IId", _read_exact(source, 16, "header"))
        limits = BandLimits(L, P, tau)
        if kind == KIND_BALL_GRID:
            vals = _read_complex(source, P * L * (2 * L - 1), "payload")
            obj = BallGrid(limits, vals.reshape(P, L, 2 * L - 1))
        else:
            vals = _read_complex(source, P * L * L, "payload")
            obj = FlagCoeffs(limits, vals.reshape(P, L * L))
    elif kind == KIND_SPHERE_KERNELS:
        from .kernel_tiling import build_sphere_kernels, scale_count

        L, j0, lam = struct.unpack("<IId", _read_exact(source, 16, "header"))
        params = TilingParams(lam=lam, nu=2.0, j0_ang=j0, j0_rad=0)
        nscales = scale_count(L, lam, j0)
        eta = _read_real(source, L, "eta payload")
        kappas = [_read_real(source, L, "kappa payload") for _ in range(nscales)]
        obj = SphereKernels(L, params, eta, kappas)
    elif kind == KIND_FLAGLET_KERNELS:
        L, P, j0a, j0r, lam, nu, tau = struct.unpack(
            "<IIIIddd", _read_exact(source, 40, "header")
        )
        limits = BandLimits(L, P, tau)
        params = TilingParams(lam=lam, nu=nu, j0_ang=j0a, j0_rad=j0r)
        phi = _read_real(source, L * P, "phi payload").reshape(L, P)
        kernels = FlagletKernels(limits, params, phi, {})
        psis = {}
        for j in kernels.j_range:
            for jp in kernels.jp_range:
                psis[(j, jp)] = _read_real(source, L * P, "psi payload").reshape(L, P)
        kernels.psis = psis
        obj = kernels
    elif kind == KIND_DECOMPOSITION:
        L, P, j0a, j0r, flags, lam, nu, tau = struct.unpack(
            "<IIIIIddd", _read_exact(source, 44, "header")
        )
        multires = bool(flags & _FLAG_MULTIRES)
        if flags & _FLAG_SPHERE:
            obj = _read_sphere_decomposition(source, L, j0a, lam, multires)
        else:
            obj = _read_flaglet_decomposition(source, L, P, j0a, j0r, lam, nu, tau, multires)
    else:
        raise KindError(f"unknown container kind {kind}")

    trailing = source.read(1)
    if trailing:
        raise LengthMismatchError("trailing bytes after declared payload")
    return obj


def _read_sphere_decomposition(source, L, j0, lam, multires):
    from .kernel_tiling import build_sphere_kernels

    params = TilingParams(lam=lam, nu=2.0, j0_ang=j0, j0_rad=0)
    kernels = build_sphere_kernels(L, params)

    def read_grid(band):
        band = band if multires else L
        vals = _read_complex(source, band * (2 * band - 1), "scale payload")
        return SphereGrid(band, vals.reshape(band, 2 * band - 1))

    scaling = read_grid(kernels.scaling_band_limit)
    wavelets = {
        j: read_grid(kernels.band_limit(j)) for j in range(kernels.j0, kernels.jmax + 1)
    }
    return SphereDecomposition(L, lam, j0, scaling, wavelets, multires)


def _read_flaglet_decomposition(source, L, P, j0a, j0r, lam, nu, tau, multires):
    from .kernel_tiling import build_flaglet_kernels

    limits = BandLimits(L, P, tau)
    params = TilingParams(lam=lam, nu=nu, j0_ang=j0a, j0_rad=j0r)
    kernels = build_flaglet_kernels(limits, params)

    def read_grid(lj, pj):
        if not multires:
            lj, pj = L, P
        vals = _read_complex(source, pj * lj * (2 * lj - 1), "scale payload")
        return BallGrid(BandLimits(lj, pj, tau), vals.reshape(pj, lj, 2 * lj - 1))

    scaling = read_grid(L, P)  # scaling part is always stored at full limits
    wavelets = {
        (j, jp): read_grid(*kernels.band_limits(j, jp))
        for j in kernels.j_range
        for jp in kernels.jp_range
    }
    return FlagletDecomposition(limits, params, scaling, wavelets, multires)
