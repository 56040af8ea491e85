"""Command-line surface: sampling runs, spectra, limit simulations and the
verification suites, with deterministic CSV/JSON/SVG outputs.

Every run writes its data files plus a JSON manifest listing the command
line, seed, parameters, version, wall time and a sha256 checksum per output
file.  Outputs are byte-identical for identical (command, seed, version).

Exit codes: 0 success, 2 usage error, 3 numeric failure, 4 verification
failure.  The environment variable CBENS_THREADS caps the replicate chunk
size used for batched computations.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import cmv, coeffs, limits, roots, sampling, stats, verify

VERSION = "0.1.0"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _chunk_size(default: int = 256) -> int:
    raw = os.environ.get("CBENS_THREADS")
    if raw is None:
        return default
    try:
        return max(1, int(raw)) * default
    except ValueError:
        return default


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def _write_manifest(path: str, seed, params: dict, outputs, t0: float) -> None:
    manifest = {
        "command": " ".join(sys.argv),
        "seed": seed,
        "parameters": params,
        "version": VERSION,
        "wall_time_s": round(time.time() - t0, 3),
        "outputs": [{"path": p, "sha256": _sha256(p)} for p in outputs],
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_complex_csv(path: str, header_base, rows) -> None:
    """Rows of complex vectors, re/im split; ragged rows padded with nan."""
    width = max((len(r) for r in rows), default=0)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        head = ["replicate"]
        for j in range(width):
            head += [f"{header_base}{j}_re", f"{header_base}{j}_im"]
        w.writerow(head)
        for i, row in enumerate(rows):
            out = [str(i)]
            for v in row:
                out += [_fmt(np.real(v)), _fmt(np.imag(v))]
            out += [_fmt(float("nan"))] * (2 * (width - len(row)))
            w.writerow(out)


def _write_svg(path: str, points: np.ndarray) -> None:
    """Flat scatter plot of complex points (no plotting dependency)."""
    pts = np.asarray(points, dtype=complex).ravel()
    pts = pts[np.isfinite(pts)]
    size = 600.0
    if pts.size:
        x0, x1 = float(np.min(pts.real)), float(np.max(pts.real))
        y0, y1 = float(np.min(pts.imag)), float(np.max(pts.imag))
    else:
        x0 = y0 = -1.0
        x1 = y1 = 1.0
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = 0.05 * span
    x0, y0, span = x0 - pad, y0 - pad, span + 2 * pad
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size:g}" '
        f'height="{size:g}" viewBox="0 0 {size:g} {size:g}">',
        f'<rect width="{size:g}" height="{size:g}" fill="white"/>',
    ]
    for z in pts:
        cx = (z.real - x0) / span * size
        cy = size - (z.imag - y0) / span * size
        lines.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="1.5" fill="black"/>')
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


_ENSEMBLES = {
    "circular": sampling.CIRCULAR,
    "ro": sampling.REAL_ORTHOGONAL,
    "cj": sampling.CIRCULAR_JACOBI,
}


def _ensemble_spec(args) -> sampling.EnsembleSpec:
    kind = _ENSEMBLES[args.ensemble]
    delta = None
    if kind == sampling.CIRCULAR_JACOBI:
        delta = complex(args.delta_re, args.delta_im)
    return sampling.EnsembleSpec(
        kind=kind, n=args.n, beta=args.beta, a=args.a, b=args.b, delta=delta
    )


def _add_sampling_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ensemble", required=True, choices=sorted(_ENSEMBLES))
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--beta", required=True, type=float)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--delta-re", type=float, default=0.0)
    p.add_argument("--delta-im", type=float, default=0.0)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".", help="output directory")


def cmd_sample(args) -> int:
    t0 = time.time()
    spec = _ensemble_spec(args)
    rng = sampling.RngStream(args.seed)
    draws = sampling.sample_ensemble_coefficients(spec, rng, size=args.reps)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "coefficients.csv")
    _write_complex_csv(csv_path, "coef", list(draws))
    _write_manifest(
        os.path.join(args.out, "manifest.json"), args.seed,
        {"ensemble": args.ensemble, "n": args.n, "beta": args.beta,
         "a": args.a, "b": args.b,
         "delta": [args.delta_re, args.delta_im], "reps": args.reps},
        [csv_path], t0,
    )
    print(csv_path)
    return 0


def _spectra(spec, args, draws) -> tuple:
    """Eigenvalue rows for the requested mode; returns (rows, n_scale)."""
    if spec.modified:
        regs = np.stack([coeffs.regular_from_modified(g) for g in draws])
    else:
        regs = draws
    chunk = _chunk_size(100 if spec.n > 50 else 1024)
    if args.mode == "truncated":
        eigs = verify._truncated_spectra(regs, chunk=chunk)
        return eigs, spec.n - 1
    if args.mode == "perturbed":
        pert = np.stack([cmv.perturb_coefficients(a, args.r) for a in regs])
        poly = cmv.szego_polynomials(pert)[-1][0]
    else:
        poly = cmv.szego_polynomials(regs)[-1][0]
    return roots.find_roots_batch(poly, chunk=chunk), spec.n


def cmd_spectrum(args) -> int:
    t0 = time.time()
    if args.mode == "perturbed" and not 0.0 <= args.r <= 1.0:
        raise ValueError("--r must lie in [0, 1]")
    spec = _ensemble_spec(args)
    rng = sampling.RngStream(args.seed)
    draws = sampling.sample_ensemble_coefficients(spec, rng, size=args.reps)
    eigs, n_scale = _spectra(spec, args, draws)
    rows = []
    for row in eigs:
        if args.scale == "edge":
            sample = roots.edge_scale(roots.PointSample(points=row), n_scale)
            rows.append(sample.points)
        else:
            rows.append(row)
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, "spectrum.csv")
    _write_complex_csv(csv_path, "eig", rows)
    outputs = [csv_path]
    if args.svg:
        svg_path = os.path.join(args.out, "spectrum.svg")
        _write_svg(svg_path, np.concatenate([np.asarray(r) for r in rows]))
        outputs.append(svg_path)
    _write_manifest(
        os.path.join(args.out, "manifest.json"), args.seed,
        {"ensemble": args.ensemble, "n": args.n, "beta": args.beta,
         "mode": args.mode, "r": args.r, "scale": args.scale,
         "reps": args.reps},
        outputs, t0,
    )
    print(csv_path)
    return 0


_FAMILIES = {"sine": limits.SINE, "bessel": limits.BESSEL, "hp": limits.HUA_PICKRELL}


def _limit_config(args, z_grid) -> limits.SdeConfig:
    family = _FAMILIES[args.family]
    delta = complex(args.delta_re, args.delta_im) if family == limits.HUA_PICKRELL else None
    return limits.SdeConfig(
        beta=args.beta, family=family, a=args.a, delta=delta,
        z_grid=z_grid, step=args.step, rng=sampling.RngStream(args.seed),
    )


def _perturbation_vector(family, q, r):
    if family == limits.BESSEL:
        return np.full_like(np.atleast_1d(np.asarray(q, float)),
                            1j * (1.0 - r) / (1.0 + r), dtype=complex)
    q = np.atleast_1d(np.asarray(q, dtype=float))
    t = (1.0 - r) / (1.0 + r)
    return (q + 1j * t) / (1.0 - 1j * q * t)


def _limit_zero_rows(args, config) -> list:
    """Per-path zeros in the box via a Taylor interpolation of the structure
    function on an enclosing circle."""
    x0, x1, y0, y1 = args.box
    center = complex((x0 + x1) / 2.0, (y0 + y1) / 2.0)
    radius = 1.3 * abs(complex(x1 - x0, y1 - y0)) / 2.0 + 1e-3
    m = 64
    circle = center + radius * np.exp(2j * np.pi * np.arange(m) / m)
    cfg = limits.SdeConfig(
        beta=config.beta, family=config.family, a=config.a, delta=config.delta,
        z_grid=circle, step=config.step, rng=config.rng,
    )
    gen = cfg.rng.generator()
    scale_k = radius ** (-np.arange(m))
    rows = []
    chunk = _chunk_size(64)
    done = 0
    while done < args.paths:
        p = min(chunk, args.paths - done)
        inc = limits.generate_increments(cfg, gen, paths=p)
        q = limits._draw_boundary(cfg, gen, paths=p)
        H = limits._integrate(cfg, circle, inc)
        if args.r is not None:
            c_vec = _perturbation_vector(cfg.family, 0.0 if q is None else q, args.r)
            vals = H[0] - c_vec[:, None] * H[1]
        else:
            vals = H[0] - 1j * H[1]
        taylor = np.fft.fft(vals, axis=-1) / m * scale_k
        for i in range(p):
            c = taylor[i]
            mags = np.abs(c)
            keep = np.nonzero(mags > 1e-13 * mags.max())[0]
            deg = min(int(keep.max()), 50)
            try:
                z = roots.find_roots(c[: deg + 1])
            except roots.RootConvergenceError:
                z = np.roots(c[deg::-1])
            z = z + center
            inside = (
                (np.abs(z - center) <= 0.98 * radius)
                & (z.real >= x0) & (z.real <= x1)
                & (z.imag > y0) & (z.imag <= y1)
            )
            rows.append(np.sort_complex(z[inside]))
        done += p
    return rows


def _limit_value_rows(args, config) -> tuple:
    z_grid = config.z_grid
    gen = config.rng.generator()
    rows = []
    header = []
    chunk = _chunk_size(64)
    done = 0
    while done < args.paths:
        p = min(chunk, args.paths - done)
        inc = limits.generate_increments(config, gen, paths=p)
        q = limits._draw_boundary(config, gen, paths=p)
        H = limits._integrate(config, z_grid, inc)
        e_vals = H[0] - 1j * H[1]
        if args.r is not None:
            c_vec = _perturbation_vector(config.family, 0.0 if q is None else q, args.r)
            out = H[0] - c_vec[:, None] * H[1]
            header = ["value"]
            rows.extend([out[i] for i in range(p)])
        else:
            q_vec = np.zeros(p) if q is None else np.atleast_1d(q)
            zeta = H[0] - q_vec[:, None] * H[1]
            header = ["zeta", "E"]
            rows.extend([np.concatenate([zeta[i], e_vals[i]]) for i in range(p)])
        done += p
    return rows, header


def cmd_limit(args) -> int:
    t0 = time.time()
    if args.r is not None and not 0.0 <= args.r <= 1.0:
        raise ValueError("--r must lie in [0, 1]")
    if args.zmax == 0:
        z_grid = np.array([0.0 + 0.0j])
    else:
        z_grid = np.linspace(-args.zmax, args.zmax, 101).astype(complex)
    config = _limit_config(args, z_grid)
    os.makedirs(args.out, exist_ok=True)
    if args.mode == "zeros":
        rows = _limit_zero_rows(args, config)
        csv_path = os.path.join(args.out, "zeros.csv")
        _write_complex_csv(csv_path, "zero", rows)
        counts_path = os.path.join(args.out, "zero_counts.csv")
        with open(counts_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["replicate", "count"])
            for i, r in enumerate(rows):
                w.writerow([str(i), str(len(r))])
        outputs = [csv_path, counts_path]
    else:
        rows, header = _limit_value_rows(args, config)
        csv_path = os.path.join(args.out, "values.csv")
        _write_complex_csv(csv_path, "_".join(header) + "_z", rows)
        outputs = [csv_path]
    _write_manifest(
        os.path.join(args.out, "manifest.json"), args.seed,
        {"family": args.family, "beta": args.beta, "a": args.a,
         "delta": [args.delta_re, args.delta_im], "paths": args.paths,
         "step": args.step, "zmax": args.zmax, "box": list(args.box),
         "mode": args.mode, "r": args.r, "u_min": config.u_min},
        outputs, t0,
    )
    print(csv_path)
    return 0


def cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, args.seed)
    os.makedirs(args.out, exist_ok=True)
    path = os.path.join(args.out, "verify_report.json")
    with open(path, "w") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for r in report["results"]:
        mark = "PASS" if r["passed"] else "FAIL"
        print(f"criterion {r['criterion']:2d} [{mark}] {r['name']}")
    print(f"report: {path}")
    return 0 if report["passed"] else 4


def _parse_box(text: str):
    parts = [float(t) for t in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("box needs four numbers x0,x1,y0,y1")
    return tuple(parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cbens")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw coefficient sequences")
    _add_sampling_flags(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("spectrum", help="eigenvalues of sampled matrices")
    _add_sampling_flags(p)
    p.add_argument("--mode", choices=("full", "truncated", "perturbed"),
                   default="full")
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--scale", choices=("none", "edge"), default="none")
    p.add_argument("--svg", action="store_true")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("limit", help="simulate the limiting functions")
    p.add_argument("--family", required=True, choices=sorted(_FAMILIES))
    p.add_argument("--beta", required=True, type=float)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--delta-re", type=float, default=0.0)
    p.add_argument("--delta-im", type=float, default=0.0)
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--zmax", type=float, default=5.0)
    p.add_argument("--box", type=_parse_box, default=(0.0, 10.0, 0.0, 3.0))
    p.add_argument("--mode", choices=("zeros", "values"), default="values")
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("verify", help="run the acceptance suites")
    p.add_argument("--suite", choices=("exact", "mc", "all"), default="all")
    p.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, coeffs.DegenerateCoefficientError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (roots.RootConvergenceError, limits.PathOverflowError,
            FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
