"""Polynomial root finding and the edge-scaling coordinate change.

``find_roots`` runs the Aberth-Ehrlich simultaneous iteration (all roots
iterated together, no numerical deflation) with initial guesses on a circle
given by the coefficient root bound, followed by Newton polishing.
``find_roots_batch`` is the same iteration vectorized over many polynomials
of equal degree, which the Monte Carlo suites rely on.

``edge_scale`` applies w = -n i log z (principal log, log 1 = 0), mapping
eigenvalues inside the unit disk to points of the open upper half plane.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

UNIT_DISK = "unit_disk"
UPPER_HALF_PLANE = "upper_half_plane"

#: points closer than this to the branch cut (-inf, 0] are dropped
BRANCH_CUT_TOL = 1e-12

MAX_DEGREE = 10_000


class RootConvergenceError(RuntimeError):
    """Raised when some roots fail the residual bound after polishing."""

    def __init__(self, failed_indices):
        self.failed_indices = list(failed_indices)
        super().__init__(
            f"roots at positions {self.failed_indices} failed to converge"
        )


@dataclass
class PointSample:
    """A finite point configuration with its coordinate frame."""

    points: np.ndarray
    frame: str = UNIT_DISK
    n: Optional[int] = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)
        if self.frame not in (UNIT_DISK, UPPER_HALF_PLANE):
            raise ValueError(f"unknown frame {self.frame!r}")


def _strip(coeffs: np.ndarray):
    """Remove exact zero leading (low-order) coefficients; returns the number
    of exact roots at the origin that were factored out."""
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    return coeffs[nz[0] :], int(nz[0])


def _horner_with_derivative(coeffs: np.ndarray, z: np.ndarray):
    """coeffs (..., deg+1) against points z (..., m); batch axes broadcast."""
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for k in range(coeffs.shape[-1] - 1, -1, -1):
        c = coeffs[..., k : k + 1] if coeffs.ndim == z.ndim else coeffs[k]
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _initial_circle(coeffs: np.ndarray, twist: float = 0.4) -> np.ndarray:
    deg = coeffs.shape[-1] - 1
    # geometric mean of the root moduli, |c_0 / c_deg|^(1/deg); bounded
    # unlike the Cauchy bound, so high degrees cannot overflow the iteration
    with np.errstate(divide="ignore"):
        log_r = (
            np.log(np.abs(coeffs[..., 0])) - np.log(np.abs(coeffs[..., -1]))
        ) / deg
    radius = np.exp(np.clip(log_r, -40.0, 40.0))
    radius = np.clip(radius, 1e-8, 1e8)
    angles = 2.0 * np.pi * (np.arange(deg) + 0.35) / deg + twist
    return np.asarray(radius)[..., None] * np.exp(1j * angles)


def _aberth(coeffs: np.ndarray, max_iter: int, tol: float, twist: float = 0.4) -> np.ndarray:
    """Simultaneous iteration; coeffs shape (..., deg+1), batch leading axes."""
    start = _initial_circle(coeffs, twist)
    z = start.copy()
    deg = coeffs.shape[-1] - 1
    diag = np.arange(deg)
    for _ in range(max_iter):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            p, dp = _horner_with_derivative(coeffs, z)
            w = p / dp
            diff = z[..., :, None] - z[..., None, :]
            diff[..., diag, diag] = np.inf
            s = np.sum(1.0 / diff, axis=-1)
            corr = w / (1.0 - w * s)
        corr = np.where(np.isfinite(corr), corr, np.where(np.isfinite(w), w, 0.0))
        z = z - corr
        bad = ~np.isfinite(z)
        if np.any(bad):
            z[bad] = start[bad] * 1.0001
        if np.max(np.abs(corr) / (1.0 + np.abs(z))) < tol:
            break
    return z


def _newton_polish(coeffs: np.ndarray, z: np.ndarray, rounds: int = 4):
    for _ in range(rounds):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            p, dp = _horner_with_derivative(coeffs, z)
            step = p / dp
        step = np.where(np.isfinite(step), step, 0.0)
        z = z - step
    return z


def _residual_ok(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Backward-error test: |p(z)| against sum_k |c_k| |z|^k."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        p, _ = _horner_with_derivative(coeffs, z)
        az = np.abs(z)
        bound = np.zeros_like(az)
        for k in range(coeffs.shape[-1] - 1, -1, -1):
            c = coeffs[..., k : k + 1] if coeffs.ndim == z.ndim else coeffs[k]
            bound = bound * az + np.abs(c)
    return np.isfinite(z) & (np.abs(p) <= 1e-10 * bound)


def find_roots(p, max_iter: int = 200) -> np.ndarray:
    """All roots of the polynomial with multiplicity, residual-checked."""
    coeffs = np.asarray(p, dtype=complex)
    if coeffs.ndim != 1 or coeffs.size < 2:
        raise ValueError("need a polynomial of degree at least one")
    if coeffs[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")
    if coeffs.size - 1 > MAX_DEGREE:
        raise ValueError(f"degree capped at {MAX_DEGREE}")
    reduced, zeros_at_origin = _strip(coeffs)
    roots = np.zeros(zeros_at_origin, dtype=complex)
    if reduced.size >= 2:
        z = None
        for twist in (0.4, 1.7, 2.9):
            z = _aberth(reduced, max_iter, 1e-13, twist=twist)
            z = _newton_polish(reduced, z)
            ok = _residual_ok(reduced, z)
            if np.all(ok):
                break
        if not np.all(ok):
            raise RootConvergenceError(np.nonzero(~ok)[0])
        roots = np.concatenate([roots, z])
    return roots


def find_roots_batch(coeffs, max_iter: int = 120, chunk: int = 256) -> np.ndarray:
    """Roots of many same-degree polynomials, shape (m, deg+1) -> (m, deg).

    Assumes nonzero leading and constant coefficients (the truncated-spectrum
    polynomials used by the Monte Carlo suites satisfy this almost surely).
    Residual failures fall back to the scalar path per polynomial.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    m, width = coeffs.shape
    out = np.empty((m, width - 1), dtype=complex)
    for lo in range(0, m, chunk):
        hi = min(lo + chunk, m)
        block = coeffs[lo:hi]
        z = _aberth(block, max_iter, 1e-13)
        z = _newton_polish(block, z)
        ok = _residual_ok(block, z)
        bad_rows = np.nonzero(~np.all(ok, axis=-1))[0]
        for row in bad_rows:
            z[row] = find_roots(block[row])
        out[lo:hi] = z
    return out


def edge_scale(points: PointSample, n: int) -> PointSample:
    """Map a disk-frame sample through w = -n i log z into the half plane.

    Points within tolerance of the branch cut (-inf, 0] are dropped; the
    number of dropped points is recorded under metadata['dropped'].
    """
    if points.frame != UNIT_DISK:
        raise ValueError("edge scaling expects a unit-disk frame sample")
    z = points.points
    on_cut = (np.abs(np.imag(z)) <= BRANCH_CUT_TOL) & (np.real(z) <= 0.0)
    kept = z[~on_cut]
    w = -1j * n * np.log(kept)
    meta = dict(points.metadata)
    meta["dropped"] = int(np.count_nonzero(on_cut))
    return PointSample(points=w, frame=UPPER_HALF_PLANE, n=n, metadata=meta)
