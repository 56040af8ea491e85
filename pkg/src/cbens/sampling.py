"""Reproducible samplers for the coefficient distributions of the ensembles.

Distributions provided:

* ``sample_theta(a)``      -- disk law with density (a/2pi)(1-|z|^2)^(a/2-1);
  for a = 0 the uniform law on the unit circle (exactly unimodular points).
* ``sample_scaled_beta``   -- law of 1 - 2 Beta(s, t) on (-1, 1).
* ``sample_pearson_iv``    -- density proportional to
  (1+x^2)^(-m) exp(-mu arctan x), by rejection from a scaled Student t.
* ``sample_theta_delta``   -- the one-parameter deformation of the disk law
  used by the circular-Jacobi ensemble.
* ``sample_ensemble_coefficients`` -- full coefficient sequences for the
  circular, real-orthogonal and circular-Jacobi ensembles.

Reproducibility: every sampler takes an :class:`RngStream` (seed plus
substream index); identical streams give identical draws.  Samplers accept a
``size`` argument to draw many independent replicates in one vectorized call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

CIRCULAR = "circular"
REAL_ORTHOGONAL = "real_orthogonal"
CIRCULAR_JACOBI = "circular_jacobi"

_KINDS = (CIRCULAR, REAL_ORTHOGONAL, CIRCULAR_JACOBI)


@dataclass(frozen=True)
class RngStream:
    """A (seed, substream) pair selecting a deterministic random stream."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng([self.seed, self.stream_id])

    def substream(self, index: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id + index)


def _generator(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be an RngStream or numpy Generator")


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one of the three ensembles.

    ``n`` is the matrix size (must be even for the real-orthogonal kind).
    ``a, b`` apply to the real-orthogonal kind, ``delta`` to circular-Jacobi.
    """

    kind: str
    n: int
    beta: float
    a: Optional[float] = None
    b: Optional[float] = None
    delta: Optional[complex] = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.kind == REAL_ORTHOGONAL:
            if self.n % 2 != 0:
                raise ValueError("real-orthogonal matrix size must be even")
            if self.a is None or self.b is None:
                raise ValueError("real-orthogonal kind requires a and b")
            if not (self.a > -1 and self.b > -1):
                raise ValueError("a and b must be greater than -1")
        if self.kind == CIRCULAR_JACOBI:
            if self.delta is None:
                raise ValueError("circular-Jacobi kind requires delta")
            if not complex(self.delta).real > -0.5:
                raise ValueError("Re delta must be greater than -1/2")

    @property
    def modified(self) -> bool:
        """True when the sampled sequence is in the modified convention."""
        return self.kind == CIRCULAR_JACOBI


def _gamma_variate(gen: np.random.Generator, shape, size=None) -> np.ndarray:
    """Gamma(shape) draws; small shapes use the boost identity
    Gamma(shape) = Gamma(shape + 1) * U^(1/shape) to avoid rejection
    pathologies near zero."""
    shape = np.asarray(shape, dtype=float)
    if np.any(shape <= 0):
        raise ValueError("gamma shape must be positive")
    boosted = gen.gamma(shape + 1.0, size=size)
    u = gen.uniform(size=boosted.shape if size is not None else None)
    small = shape < 1.0
    plain = gen.gamma(np.where(small, 1.0, shape), size=size)
    boost = boosted * u ** (1.0 / shape)
    return np.where(small, boost, plain)


def sample_theta(a: float, rng, size=None):
    """Draw from the disk law with parameter a >= 0 (circle law when a = 0)."""
    if a < 0:
        raise ValueError("a must be nonnegative")
    gen = _generator(rng)
    theta = gen.uniform(-np.pi, np.pi, size=size)
    if a == 0:
        # constructed from an angle so the result is exactly unimodular
        return np.exp(1j * theta)
    # |z|^2 ~ Beta(1, a/2) by inverse transform
    u = gen.uniform(size=size)
    r = np.sqrt(1.0 - u ** (2.0 / a))
    return r * np.exp(1j * theta)


def sample_scaled_beta(s: float, t: float, rng, size=None):
    """Draw x in (-1,1) with density proportional to (1-x)^(s-1) (1+x)^(t-1)."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(s <= 0) or np.any(t <= 0):
        raise ValueError("s and t must be positive")
    gen = _generator(rng)
    return 1.0 - 2.0 * gen.beta(s, t, size=size)


def sample_pearson_iv(m: float, mu: float, rng, size=None):
    """Draw with density proportional to (1+x^2)^(-m) exp(-mu arctan x).

    Rejection sampler: the proposal is a Student t with 2m-1 degrees of
    freedom rescaled by 1/sqrt(2m-1), whose density is proportional to
    (1+x^2)^(-m); acceptance probability exp(-mu arctan x - |mu| pi/2).
    The mean acceptance rate is at least exp(-|mu| pi).
    """
    if not m > 0.5:
        raise ValueError("m must exceed 1/2")
    gen = _generator(rng)
    scalar = size is None
    count = 1 if scalar else int(np.prod(size))
    nu = 2.0 * m - 1.0
    out = np.empty(count)
    filled = 0
    # batch size padded by the envelope bound so most calls need one round
    batch = max(64, int(count * math.exp(abs(mu) * math.pi)) + 16)
    batch = min(batch, max(count * 4, 1 << 16))
    while filled < count:
        x = gen.standard_t(nu, size=batch) / math.sqrt(nu)
        accept_logp = -mu * np.arctan(x) - abs(mu) * (math.pi / 2.0)
        keep = x[np.log(gen.uniform(size=batch)) < accept_logp]
        take = min(keep.size, count - filled)
        out[filled : filled + take] = keep[:take]
        filled += take
    if scalar:
        return float(out[0])
    return out.reshape(size)


def sample_theta_delta(a: float, delta: complex, rng, size=None):
    """Draw from the deformed disk law with parameters a >= 0, Re delta > -1/2.

    For a > 0 the draw uses the factorization into an independent gamma ratio
    1 + w = G1/G2 and a Pearson-IV variable s = v/(2+w); the disk point is
    gamma = (w - iv) / (2 + w - iv).  For a = 0 the draw is the unimodular
    point whose half-plane boundary chart is Pearson IV.
    """
    if a < 0:
        raise ValueError("a must be nonnegative")
    delta = complex(delta)
    # the law is defined on the wider range a/2 + Re delta > -1/2 (with both
    # gamma shapes positive); the a = 0 boundary case needs Re delta > -1/2
    if a == 0:
        if not delta.real > -0.5:
            raise ValueError("a = 0 requires Re delta > -1/2")
    else:
        if not a / 2.0 + delta.real > -0.5:
            raise ValueError("need a/2 + Re delta > -1/2")
        if not a / 2.0 + 2.0 * delta.real + 1.0 > 0:
            raise ValueError("need a/2 + 2 Re delta + 1 > 0")
    gen = _generator(rng)
    if a == 0:
        q = sample_pearson_iv(delta.real + 1.0, -2.0 * delta.imag, gen, size=size)
        q = np.asarray(q, dtype=float)
        # boundary Cayley chart: q real maps to the unimodular (q-i)/(q+i)
        z = (q - 1j) / (q + 1j)
        return complex(z) if size is None else z
    g1 = _gamma_variate(gen, a / 2.0, size=size)
    g2 = _gamma_variate(gen, a / 2.0 + 2.0 * delta.real + 1.0, size=size)
    w = g1 / g2 - 1.0
    s = sample_pearson_iv(
        a / 2.0 + delta.real + 1.0, -2.0 * delta.imag, gen, size=size
    )
    v = np.asarray(s) * (2.0 + w)
    z = (w - 1j * v) / (2.0 + w - 1j * v)
    return complex(z) if size is None else z


def sample_ensemble_coefficients(spec: EnsembleSpec, rng, size=None) -> np.ndarray:
    """Sample the coefficient sequence(s) of an ensemble.

    Returns shape (n,) (or (size, n) when ``size`` is given).  Circular and
    real-orthogonal kinds return regular coefficients; circular-Jacobi
    returns modified coefficients (see ``EnsembleSpec.modified``).
    """
    gen = _generator(rng)
    n = spec.n
    shape = (n,) if size is None else (size, n)
    out = np.empty(shape, dtype=complex)
    cols = out if size is None else out.T

    if spec.kind == CIRCULAR:
        for k in range(n):
            a_k = spec.beta * (n - k - 1)
            cols[k] = sample_theta(a_k, gen, size=size)
        return out

    if spec.kind == CIRCULAR_JACOBI:
        for k in range(n):
            a_k = spec.beta * (n - k - 1)
            cols[k] = sample_theta_delta(a_k, spec.delta, gen, size=size)
        return out

    # real orthogonal: all coefficients real, last one equal to -1
    two_n, a, b, beta = n, spec.a, spec.b, spec.beta
    for k in range(two_n - 1):
        if k % 2 == 0:
            s = beta / 4.0 * (two_n - k + 2 * a)
            t = beta / 4.0 * (two_n - k + 2 * b)
        else:
            s = beta / 4.0 * (two_n - k + 2 * a + 2 * b + 1)
            t = beta / 4.0 * (two_n - k - 1)
        cols[k] = sample_scaled_beta(s, t, gen, size=size)
    cols[two_n - 1] = -1.0
    return out
