"""End-to-end acceptance gate.

One test per criterion; each prints a single PASS/FAIL line so the suite
doubles as a checklist when run with -s or when reading captured output.
"""

import io

import numpy as np
import pytest

from flaglets.cli import main, random_flag_coeffs
from flaglets.flag_transform import BallGrid, BandLimits, flag_forward, flag_inverse
from flaglets.flaglet_transform import flaglet_analyze, flaglet_synthesize
from flaglets.io_container import read_container, write_container
from flaglets.kernel_tiling import TilingParams, build_flaglet_kernels, build_sphere_kernels
from flaglets.quadrature import gauss_laguerre_gen, gauss_legendre
from flaglets.radial_laguerre import RadialCoeffs, RadialParams, radial_nodes, slag_inverse
from flaglets.sphere_harmonics import SphereCoeffs, SphereGrid, sht_forward, sht_inverse
from flaglets.sphere_wavelets import sphere_analyze, sphere_synthesize

from oracles import naive_flag_forward, naive_sht_forward


def report(name, ok, detail=""):
    line = f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_01_flag_transform_exactness():
    worst = 0.0
    for L, P in [(8, 8), (16, 16), (32, 32), (64, 32)]:
        limits = BandLimits(L, P, 1.0)
        for seed in range(10):
            c = random_flag_coeffs(limits, seed)
            back = flag_forward(flag_inverse(c)).coeffs
            rel = float(np.max(np.abs(back - c.coeffs)) / np.max(np.abs(c.coeffs)))
            worst = max(worst, rel)
    report("1 FLAG round trip", worst < 1e-10, f"worst rel err {worst:.2e}")


def test_02_flaglet_transform_exactness():
    worst = 0.0
    for L in (8, 16, 32):
        limits = BandLimits(L, L, 1.0)
        for lam, nu in [(2.0, 2.0), (3.0, 2.0)]:
            kernels = build_flaglet_kernels(limits, TilingParams(lam=lam, nu=nu))
            for multires in (False, True):
                f = random_flag_coeffs(limits, L)
                d = flaglet_analyze(f, kernels, multires=multires)
                back = flaglet_synthesize(d, kernels).coeffs
                rel = float(np.max(np.abs(back - f.coeffs)) / np.max(np.abs(f.coeffs)))
                worst = max(worst, rel)
    report("2 flaglet identity", worst < 1e-9, f"worst rel err {worst:.2e}")


def test_03_admissibility():
    worst = 0.0
    for L, lam, j0 in [(16, 2.0, 0), (64, 2.0, 1), (128, 3.0, 2), (32, 1.5, 0)]:
        k = build_sphere_kernels(L, TilingParams(lam=lam, j0_ang=j0))
        total = k.eta**2 + sum(kap**2 for kap in k.kappas)
        worst = max(worst, float(np.max(np.abs(total - 1.0))))
    for L, P, lam, nu in [(16, 16, 2.0, 2.0), (32, 16, 2.0, 3.0), (64, 32, 3.0, 2.0)]:
        k = build_flaglet_kernels(BandLimits(L, P, 1.0), TilingParams(lam=lam, nu=nu))
        total = k.phi**2
        for psi in k.psis.values():
            total = total + psi**2
        worst = max(worst, float(np.max(np.abs(total - 1.0))))
    report("3 admissibility", worst < 1e-10, f"worst deviation {worst:.2e}")


def test_04_oracle_equivalence():
    worst = 0.0
    for L in (2, 4, 8):
        rng = np.random.default_rng(L)
        values = rng.uniform(-1, 1, (L, 2 * L - 1)) + 1j * rng.uniform(-1, 1, (L, 2 * L - 1))
        fast = sht_forward(SphereGrid(L, values)).coeffs
        slow = naive_sht_forward(values, L)
        worst = max(worst, float(np.max(np.abs(fast - slow))))

    limits = BandLimits(8, 8, 1.0)
    rng = np.random.default_rng(99)
    values = rng.uniform(-1, 1, (8, 8, 15)) + 1j * rng.uniform(-1, 1, (8, 8, 15))
    fast = flag_forward(BallGrid(limits, values)).coeffs
    slow = naive_flag_forward(values, limits)
    worst = max(worst, float(np.max(np.abs(fast - slow))))
    report("4 oracle equivalence", worst < 1e-11, f"worst abs err {worst:.2e}")


def test_05_quadrature_exactness():
    worst = 0.0
    for n in (1, 2, 5, 16, 64, 256):
        rng = np.random.default_rng(n)
        deg = 2 * n - 1
        coefs = rng.uniform(-1, 1, deg + 1)

        rule = gauss_legendre(n)
        q = float(np.sum(rule.weights * np.polynomial.polynomial.polyval(rule.nodes, coefs)))
        # moment of x^k over [-1, 1] is 0 (odd) or 2/(k+1) (even)
        exact = sum(c * (2.0 / (k + 1)) for k, c in enumerate(coefs) if k % 2 == 0)
        worst = max(worst, abs(q - exact) / max(abs(exact), 1e-12))

        rule = gauss_laguerre_gen(n, 2)
        # integrate sum c_k x^k / (k+2)! against x^2 e^{-x}: each term -> c_k
        x = rule.nodes.astype(np.longdouble)
        logw = np.log(rule.weights.astype(np.longdouble))
        from scipy.special import gammaln

        ks = np.arange(deg + 1)
        terms = np.exp(
            logw[:, None]
            - x[:, None]
            + ks[None, :] * np.log(x)[:, None]
            - gammaln(ks + 3)[None, :]
        )
        q = float(np.sum(coefs[None, :] * terms))
        exact = float(np.sum(coefs))
        scale = max(abs(exact), float(np.sum(np.abs(coefs))) * 1e-3)
        worst = max(worst, abs(q - exact) / scale)
    report("5 quadrature exactness", worst < 1e-11, f"worst rel err {worst:.2e}")


def test_06_parseval_identities():
    worst = 0.0

    L = 32
    rng = np.random.default_rng(6)
    c = SphereCoeffs(L, rng.standard_normal(L * L) + 1j * rng.standard_normal(L * L))
    grid = sht_inverse(c)
    w = gauss_legendre(L).weights
    dphi = 2 * np.pi / (2 * L - 1)
    e_grid = float(np.sum(w[:, None] * np.abs(grid.values) ** 2) * dphi)
    e_coef = float(np.sum(np.abs(c.coeffs) ** 2))
    worst = max(worst, abs(e_grid - e_coef) / e_coef)

    params = RadialParams(48, 1.3)
    radii, wr = radial_nodes(params)
    rc = RadialCoeffs(params, rng.uniform(-1, 1, 48))
    samples = slag_inverse(rc, radii)
    e_grid = float(np.sum(wr * np.abs(samples) ** 2))
    e_coef = float(np.sum(np.abs(rc.coeffs) ** 2))
    worst = max(worst, abs(e_grid - e_coef) / e_coef)

    limits = BandLimits(16, 16, 1.0)
    fc = random_flag_coeffs(limits, 6)
    ball = flag_inverse(fc)
    wa = gauss_legendre(16).weights
    _, wrad = radial_nodes(limits.radial)
    dphi = 2 * np.pi / 31
    e_grid = float(np.einsum("p,i,pik->", wrad, wa, np.abs(ball.values) ** 2) * dphi)
    e_coef = float(np.sum(np.abs(fc.coeffs) ** 2))
    worst = max(worst, abs(e_grid - e_coef) / e_coef)

    report("6 Parseval identities", worst < 1e-10, f"worst rel dev {worst:.2e}")


def test_07_multiresolution_consistency(capsys):
    limits = BandLimits(32, 32, 1.0)
    kernels = build_flaglet_kernels(limits, TilingParams())
    f = random_flag_coeffs(limits, 7)
    d_full = flaglet_analyze(f, kernels, multires=False)
    d_multi = flaglet_analyze(f, kernels, multires=True)
    a = flaglet_synthesize(d_full, kernels).coeffs
    b = flaglet_synthesize(d_multi, kernels).coeffs
    agree = float(np.max(np.abs(a - b)) / np.max(np.abs(a)))
    fewer = d_multi.sample_count() < d_full.sample_count()

    code = main(["bench", "--L", "16", "--P", "16", "--runs", "5", "--format", "json"])
    bench_out = capsys.readouterr().out
    ok = agree < 1e-10 and fewer and code == 0 and "speedup" in bench_out
    with capsys.disabled():
        report(
            "7 multiresolution",
            ok,
            f"agreement {agree:.2e}, samples {d_multi.sample_count()}"
            f" < {d_full.sample_count()}",
        )


def test_08_blob_energy_concentration(tmp_path, capsys):
    from flaglets.cli import blob_field

    limits = BandLimits(16, 16, 1.0)
    kernels = build_flaglet_kernels(limits, TilingParams())

    def top2(coeffs):
        d = flaglet_analyze(coeffs, kernels)
        wav = sorted(
            (v for k, v in d.scale_energies().items() if k != "scaling"), reverse=True
        )
        return sum(wav[:2]) / sum(wav)

    wide = top2(flag_forward(blob_field(limits, 3, 0.5, 1.5, seed=8)))
    white = max(top2(random_flag_coeffs(limits, s)) for s in range(3))

    # slice emission path of the qualitative figure works end to end
    field = tmp_path / "field.flg"
    png = tmp_path / "slice.pgm"
    assert main([
        "simulate", "--L", "16", "--P", "16", "--blobs", "3", "--output", str(field)
    ]) == 0
    assert main([
        "slice", "--input", str(field), "--output", str(png),
        "--axis", "shell", "--index", "2", "--component", "abs",
    ]) == 0
    ok = wide > white and png.read_bytes().startswith(b"P5")
    with capsys.disabled():
        report("8 blob-field concentration", ok, f"blob top2 {wide:.2f} > white {white:.2f}")


def test_09_serialization_roundtrip():
    objs = []
    rng = np.random.default_rng(9)
    objs.append(SphereCoeffs(8, rng.standard_normal(64) + 1j * rng.standard_normal(64)))
    objs.append(sht_inverse(objs[0]))
    limits = BandLimits(8, 6, 1.5)
    objs.append(random_flag_coeffs(limits, 9))
    objs.append(flag_inverse(objs[-1]))
    objs.append(build_sphere_kernels(16, TilingParams(lam=3.0)))
    kernels = build_flaglet_kernels(limits, TilingParams())
    objs.append(kernels)
    objs.append(flaglet_analyze(random_flag_coeffs(limits, 10), kernels, multires=True))
    sk = build_sphere_kernels(16, TilingParams())
    objs.append(
        sphere_analyze(
            SphereCoeffs(16, rng.standard_normal(256) + 0j), sk, multires=True
        )
    )

    ok = True
    for obj in objs:
        buf = io.BytesIO()
        write_container(obj, buf)
        first = buf.getvalue()
        buf2 = io.BytesIO()
        write_container(read_container(io.BytesIO(first)), buf2)
        if buf2.getvalue() != first:
            ok = False
            break
    report("9 serialization", ok, f"{len(objs)} object types bitwise-stable")
