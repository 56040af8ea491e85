"""Hyperbolic-path encoding of a measure and its canonical system.

A measure on the circle with coefficients alpha_0..alpha_{n-1} determines a
discrete path b_0 = 0, b_1, ..., b_n in the closed unit disk (equivalently
z_k in the closed upper half plane through the Cayley map).  The path plus
two boundary vectors defines a first-order canonical system J H' = z R H
with a piecewise-constant positive weight R built cell by cell from z_k.
The transfer matrix across each cell is an exact 2x2 exponential, so the
secular function H(1,.)^T J u1 and the structure-type functions are computed
without any step-size error.

Conventions: J = [[0, -1], [1, 0]]; all bilinear forms use the transpose,
never the conjugate transpose; u0 = (1, 0) and u0^T J u1 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .coeffs import (
    DEGENERACY_TOL,
    DegenerateCoefficientError,
    modified_from_regular,
    reverse,
)

J = np.array([[0.0, -1.0], [1.0, 0.0]])

#: |b_n - 1| below this means the measure has an atom at 1 and is rejected
ATOM_TOL = 1e-12


def cayley(z):
    """Upper half plane to unit disk, z -> (z - i)/(z + i)."""
    z = np.asarray(z, dtype=complex)
    return (z - 1j) / (z + 1j)


def cayley_inverse(b):
    """Unit disk to upper half plane, b -> i (1 + b)/(1 - b); 1 -> inf."""
    b = np.asarray(b, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = 1j * (1.0 + b) / (1.0 - b)
    return np.where(np.isclose(b, 1.0, atol=0.0, rtol=0.0) | (b == 1.0), np.inf, z)


@dataclass
class HyperbolicPath:
    """Discrete path b_0..b_n in the disk with half-plane chart z_k."""

    b: np.ndarray
    z: np.ndarray
    n: int

    @classmethod
    def from_disk_points(cls, b) -> "HyperbolicPath":
        b = np.asarray(b, dtype=complex)
        return cls(b=b, z=cayley_inverse(b), n=b.size - 1)

    @classmethod
    def from_halfplane_points(cls, z) -> "HyperbolicPath":
        z = np.asarray(z, dtype=complex)
        return cls(b=cayley(z), z=z, n=z.size - 1)


def path_from_regular(alpha) -> HyperbolicPath:
    """Path via the projective 2x2 matrix product over [[1, conj(a)],[a, 1]]."""
    alpha = np.asarray(alpha, dtype=complex)
    n = alpha.size
    b = np.zeros(n + 1, dtype=complex)
    M = np.eye(2, dtype=complex)
    for k in range(n):
        a = alpha[k]
        M = M @ np.array([[1.0, np.conj(a)], [a, 1.0]])
        M /= np.max(np.abs(M))  # projective: scale is irrelevant
        v = M @ np.array([0.0, 1.0])
        b[k + 1] = np.inf if v[1] == 0 else v[0] / v[1]
    return HyperbolicPath.from_disk_points(b)


def path_from_modified(gamma) -> HyperbolicPath:
    """Path via the half-plane recursion z_{k+1} = z_k + (v + i w) Im z_k,
    with v + i w = 2 i gamma_k / (1 - gamma_k)."""
    gamma = np.asarray(gamma, dtype=complex)
    n = gamma.size
    z = np.empty(n + 1, dtype=complex)
    z[0] = 1j
    for k in range(n):
        denom = 1.0 - gamma[k]
        if abs(denom) < DEGENERACY_TOL:
            if k != n - 1:
                raise DegenerateCoefficientError(
                    f"interior modified coefficient {k} equals 1"
                )
            z[k + 1] = np.inf
            break
        vw = 2j * gamma[k] / denom
        z[k + 1] = z[k] + vw * np.imag(z[k])
    return HyperbolicPath.from_halfplane_points(z)


def path_disk_recursion(gamma) -> HyperbolicPath:
    """Path via the unit-disk recursion (oracle route for the half-plane one)."""
    gamma = np.asarray(gamma, dtype=complex)
    n = gamma.size
    b = np.zeros(n + 1, dtype=complex)
    for k in range(n):
        bk = b[k]
        t = gamma[k] * (1.0 - bk) / (1.0 - np.conj(bk))
        b[k + 1] = (bk + t) / (1.0 + np.conj(bk) * t)
    return HyperbolicPath.from_disk_points(b)


def mobius_disk_matrix(gamma: complex) -> np.ndarray:
    """2x2 matrix of the affine disk isometry attached to gamma (maps gamma to 0,
    fixes 1)."""
    g = complex(gamma)
    if abs(1.0 - g) < DEGENERACY_TOL:
        raise DegenerateCoefficientError("gamma = 1 has no affine isometry")
    gc = np.conj(g)
    return np.array(
        [
            [1.0 / (1.0 - g), g / (g - 1.0)],
            [gc / (gc - 1.0), 1.0 / (1.0 - gc)],
        ]
    )


def apply_mobius(matrix: np.ndarray, points):
    """Apply a projective 2x2 map to disk points (inf handled projectively)."""
    pts = np.asarray(points, dtype=complex)
    a, b_, c, d = matrix[0, 0], matrix[0, 1], matrix[1, 0], matrix[1, 1]
    finite = np.isfinite(pts)
    out = np.empty_like(pts)
    with np.errstate(divide="ignore", invalid="ignore"):
        out[finite] = (a * pts[finite] + b_) / (c * pts[finite] + d)
    out[~finite] = np.inf if c == 0 else a / c
    return out


def path_affine_composition(gamma) -> HyperbolicPath:
    """Path via composed inverse affine isometries (third oracle route)."""
    gamma = np.asarray(gamma, dtype=complex)
    n = gamma.size
    b = np.zeros(n + 1, dtype=complex)
    M = np.eye(2, dtype=complex)
    for k in range(n):
        # b_{k+1} = A_{g_0}^{-1} o ... o A_{g_k}^{-1} (0)
        M = M @ np.linalg.inv(mobius_disk_matrix(gamma[k]))
        M /= np.max(np.abs(M))
        b[k + 1] = apply_mobius(M, np.array([0.0 + 0.0j]))[0]
    return HyperbolicPath.from_disk_points(b)


def reversed_path(alpha) -> HyperbolicPath:
    """Path of the reversed coefficient sequence."""
    return path_from_regular(reverse(alpha))


def pulled_back_path(rev: HyperbolicPath) -> HyperbolicPath:
    """Move a path by the affine isometry sending its point n-1 to the origin.

    The output has b_{n-1} = 0 (z_{n-1} = i) exactly; the final point becomes
    the last modified coefficient of the underlying sequence.
    """
    if rev.n < 1:
        raise ValueError("path needs at least one step")
    c = rev.b[rev.n - 1]
    M = mobius_disk_matrix(c)
    b = apply_mobius(M, rev.b)
    b[rev.n - 1] = 0.0  # exact by construction
    return HyperbolicPath.from_disk_points(b)


def weight_matrices(path: HyperbolicPath) -> np.ndarray:
    """Cell weights R_k, shape (n, 2, 2): for z = x + i y,
    R = [[1, -x], [-x, x^2 + y^2]] / (2 y);  det R = 1/4 always."""
    z = path.z[: path.n]
    x, y = np.real(z), np.imag(z)
    if np.any(~np.isfinite(z)) or np.any(y <= 0):
        raise ValueError("interior path points must lie in the open half plane")
    R = np.empty((path.n, 2, 2))
    R[:, 0, 0] = 1.0 / (2.0 * y)
    R[:, 0, 1] = R[:, 1, 0] = -x / (2.0 * y)
    R[:, 1, 1] = (x * x + y * y) / (2.0 * y)
    return R


@dataclass
class FiniteDiracOperator:
    """Canonical system data: path, piecewise weight, boundary vectors."""

    path: HyperbolicPath
    u1: np.ndarray
    u0: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0]))
    R: np.ndarray = None

    def __post_init__(self):
        self.u1 = np.asarray(self.u1, dtype=float)
        self.u0 = np.asarray(self.u0, dtype=float)
        if self.R is None:
            self.R = weight_matrices(self.path)
        norm = self.u0 @ J @ self.u1
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"boundary vectors must satisfy u0^T J u1 = 1, got {norm}")


def dirac_operator(path: HyperbolicPath) -> FiniteDiracOperator:
    """Operator of a measure: u1 = (-z_n, -1) from the path's boundary point.

    Measures with an atom at 1 (b_n = 1, z_n = inf) are rejected: no boundary
    vector normalized against (1, 0) exists for them.
    """
    b_n = path.b[path.n]
    if not np.isfinite(path.z[path.n]) or abs(b_n - 1.0) < ATOM_TOL:
        raise ValueError(
            "measure puts mass at the point 1 (b_n = 1); operator undefined"
        )
    q = float(np.real(path.z[path.n]))
    return FiniteDiracOperator(path=path, u1=np.array([-q, -1.0]))


def _sinc(theta: np.ndarray) -> np.ndarray:
    """sin(theta)/theta for complex theta, stable near zero."""
    theta = np.asarray(theta, dtype=complex)
    small = np.abs(theta) < 1e-6
    safe = np.where(small, 1.0, theta)
    out = np.sin(safe) / safe
    return np.where(small, 1.0 - theta * theta / 6.0, out)


def propagate(op: FiniteDiracOperator, z, cells: int) -> np.ndarray:
    """H(cells/n, z) via exact cell exponentials; z scalar or 1-d array.

    Each cell transfer is exp(-(z/n) J R_k); the matrix is traceless with
    determinant (z/(2n))^2, so the exponential is
    cos(theta) I + sinc(theta) M with theta = z/(2n).
    Returns shape (2,) + z.shape.
    """
    z = np.asarray(z, dtype=complex)
    n = op.path.n
    if not 0 <= cells <= n:
        raise ValueError("cell count out of range")
    h = 1.0 / n
    theta = z * (h / 2.0)
    c, s = np.cos(theta), _sinc(theta)
    H = np.zeros((2,) + z.shape, dtype=complex)
    H[0] = op.u0[0]
    H[1] = op.u0[1]
    for k in range(cells):
        JR = J @ op.R[k]
        MH0 = JR[0, 0] * H[0] + JR[0, 1] * H[1]
        MH1 = JR[1, 0] * H[0] + JR[1, 1] * H[1]
        factor = -z * h * s
        H = np.stack([c * H[0] + factor * MH0, c * H[1] + factor * MH1])
    return H


def canonical_solution(op: FiniteDiracOperator, z, t: float) -> np.ndarray:
    """H(t, z) with t in (0, 1]; interior t rounds down to a cell boundary."""
    n = op.path.n
    cells = int(np.floor(t * n + 1e-9))
    return propagate(op, z, cells)


def secular_function(op: FiniteDiracOperator, z):
    """zeta(z) = H(1, z)^T J u1; entire, real on the real axis, zeta(0) = 1."""
    H = propagate(op, np.asarray(z, dtype=complex), op.path.n)
    Ju1 = J @ op.u1
    return Ju1[0] * H[0] + Ju1[1] * H[1]


def _weight_form(path: HyperbolicPath, u, v) -> np.ndarray:
    """Cellwise u^T R_k v in the factored form
    ((u0 - x u1)(v0 - x v1) + y^2 u1 v1) / (2y), which avoids the
    cancellation of the assembled-matrix route near the boundary."""
    z = path.z[: path.n]
    x, y = np.real(z), np.imag(z)
    return ((u[0] - x * u[1]) * (v[0] - x * v[1]) + y * y * u[1] * v[1]) / (2.0 * y)


def hs_norm(op: FiniteDiracOperator) -> float:
    """Hilbert-Schmidt norm of the inverse:
    sqrt(2 int_0^1 int_0^t f(s) g(t) ds dt) with f = u0^T R u0, g = u1^T R u1,
    evaluated exactly over the n^2 constant cells."""
    f = _weight_form(op.path, op.u0, op.u0)
    g = _weight_form(op.path, op.u1, op.u1)
    h = 1.0 / op.path.n
    prefix = np.concatenate([[0.0], np.cumsum(f)[:-1]]) * h
    total = np.sum(g * (prefix * h + f * h * h / 2.0))
    return float(np.sqrt(2.0 * total))


def integral_trace(op: FiniteDiracOperator) -> float:
    """Integral trace: int_0^1 u0^T R(s) u1 ds as an exact cell sum."""
    vals = _weight_form(op.path, op.u0, op.u1)
    return float(np.sum(vals) / op.path.n)


def finite_structure_function(alpha, z):
    """Structure-type function of the pulled-back reversed operator.

    Computes aff H((n-1)/n, z)^T (1, -i) by cell transfer over the pulled-back
    path of the reversed sequence.  Equals the normalized-polynomial route
    e^{-i z (n-1)/(2n)} rev_psi_{n-1}(e^{i z / n}).
    """
    alpha = np.asarray(alpha, dtype=complex)
    n = alpha.size
    aff = pulled_back_path(reversed_path(alpha))
    # boundary data is irrelevant for this functional; (0,-1) satisfies the
    # normalization and keeps the constructor happy
    op = FiniteDiracOperator(path=aff, u1=np.array([0.0, -1.0]))
    H = propagate(op, np.asarray(z, dtype=complex), n - 1)
    return H[0] - 1j * H[1]


def modified_last_coefficient(alpha) -> complex:
    """Last modified coefficient of a sequence (unimodular when the last
    regular coefficient is)."""
    return complex(modified_from_regular(alpha)[-1])
