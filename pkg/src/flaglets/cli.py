"""Command-line interface: transforms, decompositions, denoising and reports.

Subcommands: roundtrip, analyze, synthesize, denoise, slice, bench,
kernels, simulate.  Exit codes: 0 success, 1 runtime error, 2 usage
error.  Random signals use numpy's PCG64 generator seeded from --seed, so
every report is reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from .flag_transform import BallGrid, BandLimits, FlagCoeffs, flag_forward, flag_inverse
from .flaglet_transform import (
    FlagletDecomposition,
    flaglet_analyze,
    flaglet_synthesize,
    threshold_denoise,
)
from .io_container import ContainerError, read_container, write_container
from .kernel_tiling import TilingParams, build_flaglet_kernels, build_sphere_kernels
from .radial_laguerre import radial_nodes
from .sphere_harmonics import sphere_sampling

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def random_flag_coeffs(limits: BandLimits, seed: int, real_signal: bool = False) -> FlagCoeffs:
    """Seeded random band-limited coefficients, components uniform in [-1, 1]."""
    rng = np.random.Generator(np.random.PCG64(seed))
    shape = (limits.P, limits.L * limits.L)
    c = rng.uniform(-1.0, 1.0, shape) + 1j * rng.uniform(-1.0, 1.0, shape)
    if real_signal:
        c = _conjugate_symmetrize(c, limits.L)
    return FlagCoeffs(limits, c)


def _conjugate_symmetrize(c: np.ndarray, L: int) -> np.ndarray:
    out = c.copy()
    for ell in range(L):
        base = ell * ell + ell
        out[:, base] = out[:, base].real
        for m in range(1, ell + 1):
            sign = -1.0 if m % 2 else 1.0
            out[:, base - m] = sign * np.conj(out[:, base + m])
    return out


def blob_field(
    limits: BandLimits,
    n_blobs: int,
    width_ang: float,
    width_rad: float,
    seed: int,
    amplitude: float = 1.0,
) -> BallGrid:
    """Synthetic field of Gaussian blobs at random locations in the ball.

    Stands in for survey-like data: each blob is a product of an angular
    Gaussian (in geodesic distance) and a radial Gaussian, placed at a
    random direction and at a radius drawn from the middle of the sampled
    shell range.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    thetas, phis = sphere_sampling(limits.L)
    radii, _ = radial_nodes(limits.radial)
    theta_g, phi_g = np.meshgrid(thetas, phis, indexing="ij")

    values = np.zeros((limits.P, limits.L, 2 * limits.L - 1))
    r_lo, r_hi = np.quantile(radii, [0.15, 0.6])
    for _ in range(n_blobs):
        tc = np.arccos(rng.uniform(-1.0, 1.0))
        pc = rng.uniform(0.0, 2.0 * np.pi)
        rc = rng.uniform(r_lo, r_hi)
        cosdist = np.cos(theta_g) * np.cos(tc) + np.sin(theta_g) * np.sin(tc) * np.cos(
            phi_g - pc
        )
        ang = np.arccos(np.clip(cosdist, -1.0, 1.0))
        angular = np.exp(-0.5 * (ang / width_ang) ** 2)
        radial = np.exp(-0.5 * ((radii - rc) / width_rad) ** 2)
        values += amplitude * radial[:, None, None] * angular[None, :, :]
    return BallGrid(limits, values)


def _limits_from_args(args) -> BandLimits:
    try:
        return BandLimits(args.L, args.P, args.tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _tiling_from_args(args) -> TilingParams:
    try:
        return TilingParams(args.lam, args.nu, args.j0_ang, args.j0_rad)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(report: dict, fmt: str):
    if fmt == "json":
        print(json.dumps(report))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")


def cmd_roundtrip(args) -> int:
    limits = _limits_from_args(args)
    coeffs = random_flag_coeffs(limits, args.seed)
    t0 = time.perf_counter()
    recovered = flag_forward(flag_inverse(coeffs))
    seconds = time.perf_counter() - t0
    err = np.abs(recovered.coeffs - coeffs.coeffs)
    max_abs = float(np.max(err))
    rel = max_abs / float(np.max(np.abs(coeffs.coeffs)))
    _emit(
        {
            "L": limits.L,
            "P": limits.P,
            "tau": limits.tau,
            "seed": args.seed,
            "max_abs_err": max_abs,
            "rel_err": rel,
            "seconds": seconds,
        },
        args.format,
    )
    return EXIT_OK if rel < 1e-9 else EXIT_RUNTIME


def _load(path, expected_types, what: str):
    obj = read_container(path)
    if not isinstance(obj, expected_types):
        names = ", ".join(t.__name__ for t in expected_types)
        raise ContainerError(f"{what}: expected {names}, got {type(obj).__name__}")
    return obj


def _print_scale_report(d: FlagletDecomposition):
    energies = d.scale_energies()
    total = sum(energies.values())
    print(f"{'scale':>12} {'samples':>10} {'energy':>24}")
    print(f"{'scaling':>12} {d.scaling.values.size:>10} {_fmt(energies['scaling']):>24}")
    for key in sorted(d.wavelets):
        grid = d.wavelets[key]
        print(f"{str(key):>12} {grid.values.size:>10} {_fmt(energies[key]):>24}")
    print(f"total samples: {d.sample_count()}")
    print(f"total energy: {_fmt(total)}")


def cmd_analyze(args) -> int:
    obj = _load(args.input, (BallGrid, FlagCoeffs), "analyze input")
    if isinstance(obj, BallGrid):
        coeffs = flag_forward(obj)
    else:
        coeffs = obj
    params = _tiling_from_args(args)
    kernels = build_flaglet_kernels(coeffs.limits, params)
    d = flaglet_analyze(coeffs, kernels, multires=args.multires)
    write_container(d, args.output)
    _print_scale_report(d)
    return EXIT_OK


def cmd_synthesize(args) -> int:
    d = _load(args.input, (FlagletDecomposition,), "synthesize input")
    kernels = build_flaglet_kernels(d.limits, d.params)
    coeffs = flaglet_synthesize(d, kernels)
    grid = flag_inverse(coeffs)
    write_container(grid, args.output)
    print(f"wrote ball grid (L={d.limits.L}, P={d.limits.P}) to {args.output}")
    return EXIT_OK


def cmd_denoise(args) -> int:
    d = _load(args.input, (FlagletDecomposition,), "denoise input")
    out = threshold_denoise(d, args.threshold, args.mode)
    write_container(out, args.output)
    _print_scale_report(out)
    return EXIT_OK


def _slice_array(grid: BallGrid, axis: str, index: int, component: str) -> np.ndarray:
    if axis == "shell":
        if not 0 <= index < grid.limits.P:
            raise UsageError(f"shell index {index} out of range [0, {grid.limits.P})")
        data = grid.values[index]
    else:  # phi half-plane: (shells, colatitudes)
        nphi = 2 * grid.limits.L - 1
        if not 0 <= index < nphi:
            raise UsageError(f"phi index {index} out of range [0, {nphi})")
        data = grid.values[:, :, index]
    if component == "re":
        return data.real
    if component == "im":
        return data.imag
    return np.abs(data)


def _write_csv(path: str, data: np.ndarray, header: list[str] | None = None):
    with open(path, "w", newline="") as fh:
        if header:
            fh.write(",".join(header) + "\r\n")
        for row in np.atleast_2d(data):
            fh.write(",".join(_fmt(v) for v in row) + "\r\n")


def _write_pgm(path: str, data: np.ndarray):
    lo, hi = float(np.min(data)), float(np.max(data))
    scale = 255.0 / (hi - lo) if hi > lo else 0.0
    img = np.round((data - lo) * scale).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode())
        fh.write(img.tobytes())


def cmd_slice(args) -> int:
    obj = _load(args.input, (BallGrid,), "slice input")
    data = _slice_array(obj, args.axis, args.index, args.component)
    if args.output.endswith(".pgm"):
        _write_pgm(args.output, data)
    else:
        _write_csv(args.output, data)
    print(f"wrote {data.shape[0]}x{data.shape[1]} slice to {args.output}")
    return EXIT_OK


def cmd_bench(args) -> int:
    limits = _limits_from_args(args)
    params = _tiling_from_args(args)
    kernels = build_flaglet_kernels(limits, params)
    coeffs = random_flag_coeffs(limits, args.seed)

    def median_time(multires: bool) -> float:
        times = []
        for _ in range(max(args.runs, 5)):
            t0 = time.perf_counter()
            d = flaglet_analyze(coeffs, kernels, multires=multires)
            flaglet_synthesize(d, kernels)
            times.append(time.perf_counter() - t0)
        return float(np.median(times))

    t_full = median_time(False)
    t_multi = median_time(True)
    _emit(
        {
            "L": limits.L,
            "P": limits.P,
            "full_res_seconds": t_full,
            "multires_seconds": t_multi,
            "speedup": t_full / t_multi if t_multi > 0 else float("inf"),
        },
        args.format,
    )
    return EXIT_OK


def cmd_kernels(args) -> int:
    params = _tiling_from_args(args)
    sph = build_sphere_kernels(args.L, params)
    rows = []
    for ell in range(args.L):
        kap = [k[ell] for k in sph.kappas]
        admiss = sph.eta[ell] ** 2 + sum(v * v for v in kap)
        rows.append([ell, sph.eta[ell], *kap, admiss])
    header = ["ell", "eta", *[f"kappa_{j}" for j in range(sph.j0, sph.jmax + 1)], "admissibility"]
    _write_csv(args.output, np.array(rows), header)
    printed = f"wrote sphere kernel table to {args.output}"
    if args.P > 0:
        limits = BandLimits(args.L, args.P, args.tau)
        fk = build_flaglet_kernels(limits, params)
        rows = []
        for ell in range(args.L):
            for p in range(args.P):
                psi = [fk.psis[key][ell, p] for key in sorted(fk.psis)]
                admiss = fk.phi[ell, p] ** 2 + sum(v * v for v in psi)
                rows.append([ell, p, fk.phi[ell, p], *psi, admiss])
        header = (
            ["ell", "p", "phi"]
            + [f"psi_{j}_{jp}" for (j, jp) in sorted(fk.psis)]
            + ["admissibility"]
        )
        ball_path = args.ball_output or args.output + ".ball.csv"
        _write_csv(ball_path, np.array(rows), header)
        printed += f"; wrote ball kernel table to {ball_path}"
    print(printed)
    return EXIT_OK


def cmd_simulate(args) -> int:
    limits = _limits_from_args(args)
    grid = blob_field(
        limits, args.blobs, args.width_ang, args.width_rad, args.seed, args.amplitude
    )
    if args.noise > 0:
        rng = np.random.Generator(np.random.PCG64(args.seed + 1))
        grid = BallGrid(limits, grid.values + args.noise * rng.standard_normal(grid.values.shape))
    write_container(grid, args.output)
    print(f"wrote blob field (L={limits.L}, P={limits.P}, blobs={args.blobs}) to {args.output}")
    return EXIT_OK


def _add_limits_args(p: argparse.ArgumentParser):
    p.add_argument("--L", type=int, required=True, help="angular band limit")
    p.add_argument("--P", type=int, required=True, help="radial band limit")
    p.add_argument("--tau", type=float, default=1.0, help="radial scale")


def _add_tiling_args(p: argparse.ArgumentParser):
    p.add_argument("--lambda", dest="lam", type=float, default=2.0, help="angular dilation")
    p.add_argument("--nu", type=float, default=2.0, help="radial dilation")
    p.add_argument("--j0-ang", dest="j0_ang", type=int, default=0)
    p.add_argument("--j0-rad", dest="j0_rad", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flaglets",
        description="Exact Fourier-Laguerre and flaglet transforms on the ball",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("roundtrip", help="inverse->forward accuracy report")
    _add_limits_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("analyze", help="flaglet decomposition of a BallGrid/FlagCoeffs file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    _add_tiling_args(p)
    p.add_argument("--multires", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize", help="rebuild a BallGrid from a decomposition file")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("denoise", help="threshold wavelet coefficients of a decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--threshold", type=float, required=True)
    p.add_argument("--mode", choices=["hard", "soft"], default="hard")
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("slice", help="emit a 2D slice of a BallGrid as CSV or PGM")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--axis", choices=["shell", "phi"], default="shell")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--component", choices=["re", "im", "abs"], default="re")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("bench", help="time full-resolution vs multiresolution transforms")
    _add_limits_args(p)
    _add_tiling_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--runs", type=int, default=5)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("kernels", help="emit kernel tables as CSV for plotting")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--P", type=int, default=0, help="if > 0, also emit the ball windows")
    p.add_argument("--tau", type=float, default=1.0)
    _add_tiling_args(p)
    p.add_argument("--output", required=True)
    p.add_argument("--ball-output", dest="ball_output", default=None)
    p.set_defaults(func=cmd_kernels)

    p = sub.add_parser("simulate", help="generate a synthetic Gaussian-blob field")
    _add_limits_args(p)
    p.add_argument("--blobs", type=int, default=8)
    p.add_argument("--width-ang", dest="width_ang", type=float, default=0.3)
    p.add_argument("--width-rad", dest="width_rad", type=float, default=0.5)
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ContainerError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
