"""Limiting random analytic functions by integrating the time-reversed SDEs.

Three families of 2-vector valued processes H(u, z) on u in [u_min, 0] are
integrated with shared noise across all z evaluation points:

* sine family:     dH = [[0, -db1], [0, db2]] H - z c(u) J H du
* bessel family:   dH = [[0, 0], [0, sqrt(2) dB + (1 - (beta/4)(2a+1)) du]] H
                        - z c(u) J H du
* hp family:       dH = [[0, -dB1], [0, dB2]] H
                        + [[0, -Im(d) du], [0, -Re(d) du]] H - z c(u) J H du

with c(u) = (beta/8) exp(beta u / 4) and H(u_min) = (1, 0).  The integrator
splits each step into an exact rotation for the potential term (using the
exact integral of c over the step, so the noise-free solution is exact to
rounding) and an exact log-linear update of H2 plus an Euler update of H1
for the noise/drift term.  With delta = 0 the hp scheme reproduces the sine
scheme exactly under shared increments.

The secular function is H(0,.)^T (1, -q) with a family-specific boundary
draw q, the structure function is H(0,.)^T (1, -i), and the rank-one
interpolation uses H(0,.)^T (1, -c_r).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .sampling import RngStream, sample_pearson_iv

SINE = "sine"
BESSEL = "bessel"
HUA_PICKRELL = "hp"

_FAMILIES = (SINE, BESSEL, HUA_PICKRELL)

#: truncated potential mass must not exceed this
POTENTIAL_TAIL_TOL = 1e-6

OVERFLOW_LIMIT = 1e12


class PathOverflowError(RuntimeError):
    """Raised when a trajectory exceeds the overflow guard."""


def default_u_min(beta: float, z_max: float) -> float:
    """Cutoff so the ignored potential tail is below tolerance with margin."""
    z_max = max(float(z_max), 1.0)
    return -max(160.0 / beta, (4.0 / beta) * math.log(2e6 * z_max))


@dataclass
class SdeConfig:
    beta: float
    family: str = SINE
    a: Optional[float] = None
    delta: Optional[complex] = None
    z_grid: np.ndarray = field(default_factory=lambda: np.array([0.0 + 0.0j]))
    step: float = 1e-3
    u_min: Optional[float] = None
    rng: RngStream = field(default_factory=lambda: RngStream(0))

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.family == BESSEL and self.a is None:
            raise ValueError("bessel family requires the parameter a")
        if self.family == HUA_PICKRELL:
            if self.delta is None:
                raise ValueError("hp family requires the parameter delta")
            if not complex(self.delta).real > -0.5:
                raise ValueError("Re delta must be greater than -1/2")
        self.z_grid = np.atleast_1d(np.asarray(self.z_grid, dtype=complex))
        z_max = float(np.max(np.abs(self.z_grid))) if self.z_grid.size else 0.0
        if self.u_min is None:
            self.u_min = default_u_min(self.beta, z_max)
        tail = z_max * math.exp(self.beta * self.u_min / 4.0) / 2.0
        if tail > POTENTIAL_TAIL_TOL:
            raise ValueError(
                f"u_min too shallow: truncated potential tail {tail:.3e} "
                f"exceeds {POTENTIAL_TAIL_TOL:g}; need u_min <= "
                f"{default_u_min(self.beta, z_max):.3f}"
            )

    @property
    def n_steps(self) -> int:
        return int(math.ceil(-self.u_min / self.step))


@dataclass
class LimitField:
    """H(0, z) on a z grid for one noise path, plus the boundary draw."""

    z_grid: np.ndarray
    H0: np.ndarray  # shape (2, len(z_grid)) or (2, paths, len(z_grid))
    boundary_q: Optional[float]
    family: str
    beta: float
    config: SdeConfig
    increments: Optional[np.ndarray] = None  # (2, n_steps[, paths])
    ito: bool = True


def generate_increments(config: SdeConfig, gen: np.random.Generator, paths=None):
    """Brownian increments, shape (2, n_steps) or (2, n_steps, paths).

    The bessel family uses only the second row (its single Brownian motion).
    """
    m = config.n_steps
    shape = (2, m) if paths is None else (2, m, paths)
    return gen.normal(0.0, math.sqrt(config.step), size=shape)


def _draw_boundary(config: SdeConfig, gen: np.random.Generator, paths=None):
    if config.family == SINE:
        q = gen.standard_cauchy(size=paths)
        return float(q) if paths is None else q
    if config.family == HUA_PICKRELL:
        d = complex(config.delta)
        q = sample_pearson_iv(d.real + 1.0, -2.0 * d.imag, gen, size=paths)
        return q
    return None  # bessel: fixed boundary vector (0, -1)


def _integrate(
    config: SdeConfig,
    z: np.ndarray,
    increments: np.ndarray,
    ito: bool = True,
):
    """Run the splitting scheme; z shape (m,), increments (2, n_steps[, P]).

    Returns H of shape (2, m) or (2, P, m) when increments carry a path axis.
    ``ito=False`` drops the Ito corrections of the log-linear noise step so a
    zero-increment run solves the deterministic drift ODE exactly.
    """
    beta, h = config.beta, config.step
    m = config.n_steps
    batched = increments.ndim == 3
    P = increments.shape[2] if batched else None
    shape = (2, z.size) if not batched else (2, P, z.size)
    H = np.zeros(shape, dtype=complex)
    H[0] = 1.0

    if config.family == BESSEL:
        drift2 = (1.0 - beta / 4.0 * (2.0 * config.a + 1.0)) * h
        noise_scale2 = math.sqrt(2.0)
        noise_scale1 = 0.0
        drift1 = 0.0
    elif config.family == HUA_PICKRELL:
        d = complex(config.delta)
        drift2 = -d.real * h
        drift1 = d.imag * h
        noise_scale1 = 1.0
        noise_scale2 = 1.0
    else:
        drift2 = 0.0
        drift1 = 0.0
        noise_scale1 = 1.0
        noise_scale2 = 1.0
    if ito:
        drift2 -= noise_scale2 ** 2 * h / 2.0

    u = config.u_min
    exp_lo = math.exp(beta * u / 4.0)
    for k in range(m):
        u_next = min(u + h, 0.0)
        exp_hi = math.exp(beta * u_next / 4.0)
        # potential sub-step: exact rotation by phi = z * int c(s) ds
        phi = z * ((exp_hi - exp_lo) / 2.0)
        c, s = np.cos(phi), np.sin(phi)
        # exp(-phi J) = [[cos, sin], [-sin, cos]] applied to H
        H0_new = c * H[0] + s * H[1]
        H1_new = -s * H[0] + c * H[1]
        # noise/drift sub-step (z independent)
        db1 = increments[0, k]
        db2 = increments[1, k]
        if batched:
            db1 = db1[:, None]
            db2 = db2[:, None]
        growth = np.exp(noise_scale2 * db2 + drift2)
        H1_new = H1_new * growth
        if noise_scale1 or drift1:
            H0_new = H0_new - H1_new * (noise_scale1 * db1 + drift1)
        H = np.stack([H0_new, H1_new])
        u, exp_lo = u_next, exp_hi
        if k % 256 == 0 and not np.all(np.isfinite(H)):
            raise PathOverflowError("trajectory diverged")
    if np.max(np.abs(H)) > OVERFLOW_LIMIT:
        raise PathOverflowError("trajectory exceeded the overflow guard")
    return H


def simulate_H(
    config: SdeConfig,
    noise: bool = True,
    increments: Optional[np.ndarray] = None,
) -> LimitField:
    """Integrate one noise path over the configured z grid.

    ``noise=False`` zeroes the increments (closed-form test hook).  Explicit
    ``increments`` override the stream (used for step-halving refinement and
    cross-family comparisons with shared noise).
    """
    gen = config.rng.generator()
    if increments is None:
        increments = generate_increments(config, gen)
    if not noise:
        increments = np.zeros_like(increments)
    q = _draw_boundary(config, gen)
    H = _integrate(config, config.z_grid, increments, ito=noise)
    return LimitField(
        z_grid=config.z_grid,
        H0=H,
        boundary_q=q,
        family=config.family,
        beta=config.beta,
        config=config,
        increments=increments,
        ito=noise,
    )


def evaluate_H(field: LimitField, z) -> np.ndarray:
    """Re-run the stored noise path on new z points (entire continuation)."""
    if field.increments is None:
        raise ValueError("field carries no stored increments")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    return _integrate(field.config, z, field.increments, ito=field.ito)


def _lookup(field: LimitField, z) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    H = np.empty((2, z.size), dtype=complex)
    missing = []
    for j, zj in enumerate(z):
        matches = np.nonzero(np.isclose(field.z_grid, zj, rtol=0, atol=1e-12))[0]
        if matches.size:
            H[:, j] = field.H0[:, matches[0]]
        else:
            missing.append(j)
    if missing:
        H[:, missing] = evaluate_H(field, z[missing])
    return H


def structure_fn(field: LimitField, z):
    """E(z) = H(0, z)^T (1, -i)."""
    H = _lookup(field, z)
    out = H[0] - 1j * H[1]
    return out[0] if np.isscalar(z) or np.asarray(z).ndim == 0 else out


def secular_fn(field: LimitField, z):
    """zeta(z) = H(0, z)^T (1, -q) (bessel: q = 0, first component)."""
    q = 0.0 if field.boundary_q is None else field.boundary_q
    H = _lookup(field, z)
    out = H[0] - q * H[1]
    return out[0] if np.isscalar(z) or np.asarray(z).ndim == 0 else out


def perturbation_coefficient(field: LimitField, r: float, gamma=None) -> complex:
    """The coefficient c_r of the interpolation H(0,.)^T (1, -c_r)."""
    if not 0.0 <= r <= 1.0:
        raise ValueError("r must lie in [0, 1]")
    if field.family == BESSEL:
        return 1j * (1.0 - r) / (1.0 + r)
    if gamma is not None:
        g = complex(gamma)
        if abs(1.0 + r * g) == 0.0:
            raise ValueError("pole: r * gamma = -1")
        return 1j * (1.0 - r * g) / (1.0 + r * g)
    q = field.boundary_q
    t = (1.0 - r) / (1.0 + r)
    return (q + 1j * t) / (1.0 - 1j * q * t)


def perturbed_structure_fn(field: LimitField, r: float, gamma=None) -> Callable:
    """z -> H(0, z)^T (1, -c_r); c_1 recovers the secular vector, c_0 = i."""
    c_r = perturbation_coefficient(field, r, gamma)

    def f(z):
        H = _lookup(field, z)
        out = H[0] - c_r * H[1]
        return out[0] if np.isscalar(z) or np.asarray(z).ndim == 0 else out

    return f


def _winding_number(values: np.ndarray) -> float:
    """Total argument change around a closed sampled contour, in turns."""
    phases = np.angle(values)
    d = np.diff(phases, append=phases[:1])
    d = (d + np.pi) % (2.0 * np.pi) - np.pi
    return float(np.sum(d) / (2.0 * np.pi))


def _box_contour(box, samples_per_edge: int) -> np.ndarray:
    x0, x1, y0, y1 = box
    t = np.arange(samples_per_edge) / samples_per_edge
    bottom = x0 + (x1 - x0) * t + 1j * y0
    right = x1 + 1j * (y0 + (y1 - y0) * t)
    top = x1 - (x1 - x0) * t + 1j * y1
    left = x0 + 1j * (y1 - (y1 - y0) * t)
    return np.concatenate([bottom, right, top, left])


def count_zeros(f: Callable, box, samples_per_edge: int = 512, max_doublings: int = 4) -> int:
    """Zero count inside a rectangle by boundary winding with refinement."""
    samples = samples_per_edge
    for _ in range(max_doublings + 1):
        vals = np.asarray(f(_box_contour(box, samples)))
        w = _winding_number(vals)
        if abs(w - round(w)) < 0.1:
            return int(round(w))
        samples *= 2
    raise RuntimeError(
        f"winding number did not stabilize on box {box} at {samples} samples/edge"
    )


def _newton(f: Callable, z0: complex, tol: float = 1e-8, max_iter: int = 60) -> complex:
    z = complex(z0)
    for _ in range(max_iter):
        h = 1e-6 * (1.0 + abs(z))
        fz = complex(np.asarray(f(z)).reshape(-1)[0])
        dfz = (
            complex(np.asarray(f(z + h)).reshape(-1)[0])
            - complex(np.asarray(f(z - h)).reshape(-1)[0])
        ) / (2.0 * h)
        if dfz == 0:
            break
        step = fz / dfz
        z -= step
        if abs(step) < tol * (1.0 + abs(z)) and abs(fz) < tol:
            break
    return z


def locate_zeros(f: Callable, box, samples_per_edge: int = 512, min_size: float = 1e-6):
    """All zeros of an analytic function in a rectangle.

    Counts by argument-principle winding on the (adaptively refined) boundary,
    subdivides quadtree-style until each leaf holds at most one zero, then
    polishes with Newton using a numerically differenced derivative.
    """
    zeros = []

    def recurse(b):
        count = count_zeros(f, b, samples_per_edge)
        if count == 0:
            return
        x0, x1, y0, y1 = b
        if count == 1 or max(x1 - x0, y1 - y0) < min_size:
            center = complex((x0 + x1) / 2.0, (y0 + y1) / 2.0)
            root = _newton(f, center)
            zeros.extend([root] * count)
            return
        # split off-center so zeros are unlikely to sit on the cut
        xm = x0 + (x1 - x0) * 0.503
        ym = y0 + (y1 - y0) * 0.497
        for sub in (
            (x0, xm, y0, ym),
            (xm, x1, y0, ym),
            (x0, xm, ym, y1),
            (xm, x1, ym, y1),
        ):
            recurse(sub)

    recurse(tuple(box))
    return np.array(zeros, dtype=complex)
