"""Exact beta = 2 kernel oracles and the Monte Carlo comparison machinery.

The two closed-form intensities (size-n truncated unitary ensemble inside the
disk, and its hard-edge limit in the upper half plane) serve as oracles for
histogram and mean-count tests.  ``trunc_density_oracle`` gives the exact
one-eigenvalue density of the truncated size-2 ensembles for any beta.
``mc_identity_suite`` runs the distributional identities used by the
acceptance suite as two-sample KS tests with Bonferroni correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special
from scipy import stats as sstats

from .coeffs import gamma_iota
from .roots import PointSample
from .sampling import (
    CIRCULAR,
    EnsembleSpec,
    RngStream,
    sample_ensemble_coefficients,
    sample_theta_delta,
)


@dataclass
class CountStatistics:
    """Counts of points in a fixed box across replicates."""

    box: tuple
    counts: np.ndarray
    replicates: int = 0
    mean: float = 0.0
    variance: float = 0.0

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=int)
        self.replicates = int(self.counts.size)
        self.mean = float(np.mean(self.counts)) if self.replicates else 0.0
        self.variance = float(np.var(self.counts)) if self.replicates else 0.0


def rho1_trunc_cue(z, n: int) -> np.ndarray:
    """One-point intensity of the size-n truncated unitary ensemble (beta = 2)
    with respect to Lebesgue measure on the disk:
    (1/pi) sum_{k=0}^{n-1} (k+1) |z|^{2k}.  Integrates to n over the disk."""
    z = np.asarray(z, dtype=complex)
    r2 = np.abs(z) ** 2
    k = np.arange(n)
    return np.sum((k + 1) * r2[..., None] ** k, axis=-1) / math.pi


def rho1_trunc_cue_radial_cdf(r, n: int) -> np.ndarray:
    """Expected number of points within radius r: sum_k r^(2k+2)."""
    r = np.asarray(r, dtype=float)
    k = np.arange(n)
    return np.sum(r[..., None] ** (2 * k + 2), axis=-1)


def edge_kernel_intensity(z) -> np.ndarray:
    """Diagonal of the hard-edge kernel in the upper half plane:
    K(z, z) = (1/pi) int_0^1 t exp(-2 t Im z) dt
            = (1 - (1 + 2y) exp(-2y)) / (4 pi y^2),  y = Im z > 0,
    with the short-y series used below y = 1e-4 (limit 1/(2 pi))."""
    z = np.asarray(z, dtype=complex)
    y = np.imag(z) if np.iscomplexobj(z) else np.asarray(z, dtype=float)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if np.any(y <= 0):
        raise ValueError("points must lie in the open upper half plane")
    c = 2.0 * y
    small = c < 1e-4
    safe = np.where(small, 1.0, c)
    closed = (1.0 - (1.0 + safe) * np.exp(-safe)) / (safe * safe)
    series = 0.5 - c / 3.0 + c * c / 8.0
    out = np.where(small, series, closed) / math.pi
    return out if out.size > 1 else float(out[0])


def edge_kernel_intensity_quadrature(y: float) -> float:
    """Direct quadrature of the defining integral (oracle self-check)."""
    val, _ = integrate.quad(lambda t: t * math.exp(-2.0 * t * y), 0.0, 1.0)
    return val / math.pi


def trunc_density_oracle(spec: EnsembleSpec, z_points) -> np.ndarray:
    """Exact density of the single truncated eigenvalue for matrix size 2.

    circular:        (beta/2pi) (1-|z|^2)^(beta/2-1)
    circular-jacobi: c (1-|z|^2)^(beta/2-1) (1-z)^conj(delta) (1-conj(z))^delta
    with c = Gamma(b2+1+delta) Gamma(b2+1+conj(delta)) /
             (pi Gamma(b2) Gamma(b2+1+delta+conj(delta))),  b2 = beta/2.
    """
    if spec.n != 2:
        raise ValueError("oracle only covers the single-eigenvalue case n = 2")
    if spec.kind == "real_orthogonal":
        raise ValueError("no closed-form oracle for the real-orthogonal kind")
    z = np.asarray(z_points, dtype=complex)
    b2 = spec.beta / 2.0
    radial = (1.0 - np.abs(z) ** 2) ** (b2 - 1.0)
    if spec.kind == CIRCULAR:
        return spec.beta / (2.0 * math.pi) * radial
    d = complex(spec.delta)
    log_c = (
        special.loggamma(b2 + 1 + d)
        + special.loggamma(b2 + 1 + np.conj(d))
        - special.loggamma(b2)
        - special.loggamma(b2 + 1 + 2 * d.real)
    )
    c = float(np.real(np.exp(log_c))) / math.pi
    angular = np.exp(2.0 * np.real(np.conj(d) * np.log(1.0 - z)))
    return c * radial * angular


def ks_two_sample(x, y):
    """Two-sample Kolmogorov-Smirnov test: (statistic, p_value)."""
    res = sstats.ks_2samp(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return float(res.statistic), float(res.pvalue)


def count_in_box(points: PointSample, box) -> int:
    """Closed-box count; boundary points on max edges included (<= rule)."""
    x0, x1, y0, y1 = box
    p = points.points
    inside = (
        (p.real >= x0) & (p.real <= x1) & (p.imag >= y0) & (p.imag <= y1)
    )
    return int(np.count_nonzero(inside))


def angle_from_one(z) -> np.ndarray:
    """Angle of a circle-valued variable relative to the point 1."""
    return np.angle(np.asarray(z, dtype=complex))


REVERSED_CIRCULAR = "reversed_circular"
BOUNDARY_HITTING = "boundary_hitting"
GAMMA_RATIO = "gamma_ratio"
IOTA_LAW = "iota_law"


def _ks_components_complex(name, lhs, rhs, circle=False):
    """KS comparisons for one component: Re/Im for disk-valued variables,
    angle relative to 1 for circle-valued ones."""
    comps = []
    if circle:
        stat, p = ks_two_sample(angle_from_one(lhs), angle_from_one(rhs))
        comps.append({"name": f"{name}:angle", "statistic": stat, "p_value": p})
    else:
        for label, proj in (("re", np.real), ("im", np.imag)):
            stat, p = ks_two_sample(proj(lhs), proj(rhs))
            comps.append(
                {"name": f"{name}:{label}", "statistic": stat, "p_value": p}
            )
    return comps


def mc_identity_suite(identity: str, params: dict, replicates: int, rng: RngStream):
    """Run one distributional-identity check; returns a report dict.

    identities:
      reversed_circular: the reversed circular coefficient sequence has the
        law (alpha_{n-2}, ..., alpha_0, alpha_{n-1}).
      boundary_hitting: the final path point of the circular-Jacobi measure
        is distributed like the deformed circle law.
      gamma_ratio: first component of the ratio-sequence identity for
        independent deformed disk draws.
      iota_law: the iota image of a deformed disk draw follows the deformed
        law with parameters (a + 4 Re delta + 2, -(1 + delta)).
    """
    gen_a = rng.substream(0).generator()
    gen_b = rng.substream(1).generator()
    comps = []

    if identity == REVERSED_CIRCULAR:
        beta, n = params["beta"], params["n"]
        spec = EnsembleSpec(kind=CIRCULAR, n=n, beta=beta)
        alpha = sample_ensemble_coefficients(spec, gen_a, size=replicates)
        other = sample_ensemble_coefficients(spec, gen_b, size=replicates)
        last = alpha[:, -1]
        rev = np.empty_like(alpha)
        rev[:, :-1] = -last[:, None] * np.conj(alpha[:, -2::-1])
        rev[:, -1] = last
        expect = np.concatenate([other[:, -2::-1], other[:, -1:]], axis=1)
        for k in range(n):
            comps += _ks_components_complex(
                f"component{k}", rev[:, k], expect[:, k], circle=(k == n - 1)
            )
    elif identity == BOUNDARY_HITTING:
        beta, n, delta = params["beta"], params["n"], complex(params["delta"])
        spec = EnsembleSpec(kind="circular_jacobi", n=n, beta=beta, delta=delta)
        gammas = sample_ensemble_coefficients(spec, gen_a, size=replicates)
        # disk path recursion vectorized over replicates
        b_n = np.zeros(replicates, dtype=complex)
        for k in range(n):
            g = gammas[:, k]
            t = g * (1.0 - b_n) / (1.0 - np.conj(b_n))
            b_n = (b_n + t) / (1.0 + np.conj(b_n) * t)
        direct = sample_theta_delta(0.0, delta, gen_b, size=replicates)
        comps += _ks_components_complex("b_n", b_n, direct, circle=True)
    elif identity == GAMMA_RATIO:
        delta = complex(params["delta"])
        a_seq = params["a"]
        zeta_a = [
            sample_theta_delta(a_i, delta, gen_a, size=replicates) for a_i in a_seq
        ]
        zeta_b = [
            sample_theta_delta(a_i, delta, gen_b, size=replicates) for a_i in a_seq
        ]
        lhs = gamma_iota(zeta_a[1]) / zeta_a[0]
        rhs = np.conj(zeta_b[1])
        comps += _ks_components_complex("first", lhs, rhs, circle=False)
    elif identity == IOTA_LAW:
        delta = complex(params["delta"])
        a = params["a"]
        base = sample_theta_delta(a, delta, gen_a, size=replicates)
        image = gamma_iota(base)
        direct = sample_theta_delta(
            a + 4.0 * delta.real + 2.0, -(1.0 + delta), gen_b, size=replicates
        )
        comps += _ks_components_complex("iota", image, direct, circle=False)
    else:
        raise ValueError(f"unknown identity {identity!r}")

    alpha_level = 0.01
    bonferroni = alpha_level / max(len(comps), 1)
    p_min = min(c["p_value"] for c in comps)
    return {
        "identity": identity,
        "params": {k: str(v) for k, v in params.items()},
        "replicates": replicates,
        "components": comps,
        "p_min": p_min,
        "bonferroni_threshold": bonferroni,
        "passed": bool(p_min > bonferroni),
    }
