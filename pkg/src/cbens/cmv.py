"""Five-diagonal unitary matrices and the two polynomial recursions.

``build_cmv`` assembles the canonical five-diagonal matrix L*M of a
coefficient sequence (unitary iff the last coefficient is unimodular).
``szego_polynomials`` and ``modified_szego_polynomials`` run the monic and
the normalized-at-1 recursions; the degree-n monic polynomial equals the
characteristic polynomial det(zI - C).  ``perturb_coefficients`` produces the
coefficient sequence whose matrix carries the spectrum of the rank-one
multiplicative perturbation C * diag(r, 1, ..., 1).

Polynomials are dense complex coefficient vectors in ascending degree order.
The recursions accept a batch dimension: a (reps, n) coefficient array yields
(reps, k+1) polynomial arrays, which is what the Monte Carlo suites use.
"""

from __future__ import annotations

import numpy as np

from .coeffs import (
    DEGENERACY_TOL,
    UNIMODULAR_TOL,
    DegenerateCoefficientError,
    reverse,
)


def _xi_block(alpha: np.ndarray, k: int) -> np.ndarray:
    """Block k of the L/M factorization: 2x2 for k <= n-2, 1x1 at the ends."""
    n = alpha.size
    if k == -1:
        return np.array([[1.0 + 0.0j]])
    if k == n - 1:
        return np.array([[np.conj(alpha[k])]])
    a = alpha[k]
    rho = np.sqrt(max(1.0 - abs(a) ** 2, 0.0))
    return np.array([[np.conj(a), rho], [rho, -a]])


def build_cmv(alpha) -> np.ndarray:
    """Assemble the n x n five-diagonal matrix L*M of the coefficients."""
    alpha = np.asarray(alpha, dtype=complex)
    n = alpha.size
    if n == 0:
        raise ValueError("need at least one coefficient")
    if np.any(np.abs(alpha) > 1.0 + UNIMODULAR_TOL):
        raise ValueError("coefficients must lie in the closed unit disk")
    L = np.zeros((n, n), dtype=complex)
    M = np.zeros((n, n), dtype=complex)
    for k in range(0, n, 2):
        blk = _xi_block(alpha, k)
        L[k : k + blk.shape[0], k : k + blk.shape[1]] = blk
    M[0, 0] = 1.0
    for k in range(1, n, 2):
        blk = _xi_block(alpha, k)
        M[k : k + blk.shape[0], k : k + blk.shape[1]] = blk
    return L @ M


def truncate_matrix(C: np.ndarray) -> np.ndarray:
    """Delete the first row and column (n >= 2 required)."""
    C = np.asarray(C)
    if C.shape[0] < 2:
        raise ValueError("cannot truncate a 1 x 1 matrix")
    return C[1:, 1:].copy()


def perturb_coefficients(alpha, r: float) -> np.ndarray:
    """Coefficients whose matrix has the spectrum of C * diag(r, 1, ..., 1).

    Returns (rev alpha_0, ..., rev alpha_{n-2}, r * rev alpha_{n-1}); at
    r = 1 the spectrum is the full one, at r = 0 the truncated one plus an
    extra zero eigenvalue.
    """
    if not 0.0 <= r <= 1.0:
        raise ValueError("r must lie in [0, 1]")
    rev = reverse(alpha)
    rev[-1] *= r
    return rev


def szego_polynomials(alpha):
    """Monic recursion.  Returns [(phi_0, phi_0*), ..., (phi_n, phi_n*)].

    phi_{k+1} = z phi_k - conj(alpha_k) phi_k*,
    phi*_{k+1} = -alpha_k z phi_k + phi_k*;  phi_0 = phi_0* = 1.
    Batched: alpha of shape (reps, n) gives polynomial arrays (reps, k+1).
    """
    alpha = np.asarray(alpha, dtype=complex)
    batched = alpha.ndim == 2
    n = alpha.shape[-1]
    lead = (alpha.shape[0], 1) if batched else (1,)
    phi = np.ones(lead, dtype=complex)
    phi_star = np.ones(lead, dtype=complex)
    out = [(phi, phi_star)]
    for k in range(n):
        a = alpha[..., k : k + 1]
        z_phi = np.concatenate([np.zeros(lead, dtype=complex), phi], axis=-1)
        pad = np.zeros(lead, dtype=complex)
        star_pad = np.concatenate([phi_star, pad], axis=-1)
        phi_next = z_phi - np.conj(a) * star_pad
        phi_star_next = -a * z_phi + star_pad
        phi, phi_star = phi_next, phi_star_next
        out.append((phi, phi_star))
    return out


def modified_szego_polynomials(gamma):
    """Normalized-at-1 recursion.  psi_k(1) = 1 for every produced k.

    psi_{k+1} = (z psi_k - gamma_k psi_k*) / (1 - gamma_k),
    psi*_{k+1} = (-conj(gamma_k) z psi_k + psi_k*) / (1 - conj(gamma_k)).
    """
    gamma = np.asarray(gamma, dtype=complex)
    batched = gamma.ndim == 2
    n = gamma.shape[-1]
    if np.any(np.abs(1.0 - gamma) < DEGENERACY_TOL):
        raise DegenerateCoefficientError("some |1 - gamma_k| below tolerance")
    lead = (gamma.shape[0], 1) if batched else (1,)
    psi = np.ones(lead, dtype=complex)
    psi_star = np.ones(lead, dtype=complex)
    out = [(psi, psi_star)]
    for k in range(n):
        g = gamma[..., k : k + 1]
        z_psi = np.concatenate([np.zeros(lead, dtype=complex), psi], axis=-1)
        pad = np.zeros(lead, dtype=complex)
        star_pad = np.concatenate([psi_star, pad], axis=-1)
        psi_next = (z_psi - g * star_pad) / (1.0 - g)
        psi_star_next = (-np.conj(g) * z_psi + star_pad) / (1.0 - np.conj(g))
        psi, psi_star = psi_next, psi_star_next
        out.append((psi, psi_star))
    return out


def characteristic_polynomial(alpha) -> np.ndarray:
    """Coefficients (ascending) of det(zI - C) for the given sequence."""
    return szego_polynomials(alpha)[-1][0]
