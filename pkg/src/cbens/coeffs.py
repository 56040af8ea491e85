"""Algebra on coefficient sequences of measures on the unit circle.

A finite measure on the circle supported on n points is encoded by its
coefficient sequence alpha_0..alpha_{n-1}: the first n-1 entries lie in the
open unit disk and the last one is unimodular.  This module provides the
bijection with the "modified" sequence gamma_0..gamma_{n-1} (which makes the
polynomials normalized at 1 recursive), the reversal map, and the disk
involution gamma -> gamma^iota coming from inverting an affine hyperbolic
isometry.  All functions are pure and accept array-likes of complex numbers.
"""

from __future__ import annotations

import numpy as np

#: below this distance of a denominator 1 - gamma_j from zero the conversion
#: is considered degenerate (measure with an atom arbitrarily close to 1)
DEGENERACY_TOL = 1e-14

#: tolerance for the "last coefficient is unimodular" check
UNIMODULAR_TOL = 1e-12


class DegenerateCoefficientError(ValueError):
    """Raised when an intermediate 1 - gamma_j factor is numerically zero."""


def _as_complex_vector(values) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.ndim != 1:
        raise ValueError("coefficient sequence must be one-dimensional")
    return arr


def is_unitary(alpha) -> bool:
    """True when the last coefficient is unimodular within tolerance."""
    alpha = _as_complex_vector(alpha)
    if alpha.size == 0:
        return False
    return abs(abs(alpha[-1]) - 1.0) <= UNIMODULAR_TOL


def modified_from_regular(alpha) -> np.ndarray:
    """Map a regular coefficient sequence to the modified one.

    gamma_k = conj(alpha_k) * prod_{j<k} (1 - conj(gamma_j)) / (1 - gamma_j).
    The running product has modulus one, so |gamma_k| = |alpha_k|.
    """
    alpha = _as_complex_vector(alpha)
    n = alpha.size
    gamma = np.empty(n, dtype=complex)
    factor = 1.0 + 0.0j
    for k in range(n):
        g = np.conj(alpha[k]) * factor
        gamma[k] = g
        if k < n - 1:
            # only factors for j <= n-2 are ever consumed; gamma_{n-1} = 1
            # (an atom at 1) is legal here and rejected downstream instead
            d = 1.0 - g
            if abs(d) < DEGENERACY_TOL:
                raise DegenerateCoefficientError(
                    f"coefficient {k}: |1 - gamma| = {abs(d):.3e} below "
                    f"{DEGENERACY_TOL:g}"
                )
            factor *= np.conj(d) / d
    return gamma


def regular_from_modified(gamma) -> np.ndarray:
    """Inverse of :func:`modified_from_regular`.

    The product factor depends only on gamma, so the inverse is direct:
    alpha_k = conj(gamma_k) * prod_{j<k} (1 - conj(gamma_j)) / (1 - gamma_j).
    """
    gamma = _as_complex_vector(gamma)
    n = gamma.size
    alpha = np.empty(n, dtype=complex)
    factor = 1.0 + 0.0j
    for k in range(n):
        alpha[k] = np.conj(gamma[k]) * factor
        if k < n - 1:
            d = 1.0 - gamma[k]
            if abs(d) < DEGENERACY_TOL:
                raise DegenerateCoefficientError(
                    f"coefficient {k}: |1 - gamma| = {abs(d):.3e} below "
                    f"{DEGENERACY_TOL:g}"
                )
            factor *= np.conj(d) / d
    return alpha


def reverse(alpha) -> np.ndarray:
    """Reversal map on sequences with unimodular last entry.

    (alpha_0, ..., alpha_{n-1}) ->
        (-alpha_{n-1} conj(alpha_{n-2}), ..., -alpha_{n-1} conj(alpha_0),
         alpha_{n-1}).
    Involution because |alpha_{n-1}| = 1.
    """
    alpha = _as_complex_vector(alpha)
    if alpha.size == 0:
        raise ValueError("cannot reverse an empty sequence")
    last = alpha[-1]
    if abs(abs(last) - 1.0) > UNIMODULAR_TOL:
        raise ValueError(
            f"last coefficient must be unimodular, got |alpha| = {abs(last)!r}"
        )
    out = np.empty_like(alpha)
    out[:-1] = -last * np.conj(alpha[-2::-1])
    out[-1] = last
    return out


def gamma_iota(gamma):
    """Disk involution gamma -> -gamma (1 - conj(gamma)) / (1 - gamma).

    Preserves the modulus; corresponds to inverting the affine disk isometry
    attached to gamma.  Accepts scalars or arrays; rejects gamma = 1.
    """
    g = np.asarray(gamma, dtype=complex)
    denom = 1.0 - g
    if np.any(np.abs(denom) < DEGENERACY_TOL):
        raise DegenerateCoefficientError("gamma = 1 has no image under iota")
    out = -g * (1.0 - np.conj(g)) / denom
    if np.isscalar(gamma) or getattr(gamma, "ndim", 0) == 0:
        return complex(out)
    return out
