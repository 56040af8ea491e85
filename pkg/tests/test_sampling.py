import numpy as np
import pytest
from scipy import stats as sps

from cbens import sampling


def test_stream_determinism():
    s = sampling.RngStream(123, 4)
    a = sampling.sample_theta(2.0, s, size=10)
    b = sampling.sample_theta(2.0, sampling.RngStream(123, 4), size=10)
    assert np.array_equal(a, b)
    c = sampling.sample_theta(2.0, s.substream(1), size=10)
    assert not np.array_equal(a, c)


def test_theta_zero_exactly_unimodular():
    z = sampling.sample_theta(0.0, sampling.RngStream(1), size=1000)
    assert np.allclose(np.abs(z), 1.0, atol=0, rtol=1e-15)


def test_theta_radius_law():
    # |z|^2 ~ Beta(1, a/2)
    a = 3.0
    z = sampling.sample_theta(a, sampling.RngStream(2), size=20000)
    _, p = sps.kstest(np.abs(z) ** 2, sps.beta(1, a / 2).cdf)
    assert p > 1e-3


def test_scaled_beta_support_and_moment():
    x = sampling.sample_scaled_beta(2.0, 3.0, sampling.RngStream(3), size=20000)
    assert np.all((-1 < x) & (x < 1))
    # mean of 1 - 2 Beta(s, t) is (s - t) / (s + t) with roles as coded
    _, p = sps.kstest((1 - x) / 2, sps.beta(2.0, 3.0).cdf)
    assert p > 1e-3


def test_pearson_iv_matches_density():
    m, mu = 3.0, 1.5
    x = sampling.sample_pearson_iv(m, mu, sampling.RngStream(4), size=20000)
    from scipy.integrate import quad
    norm = quad(lambda t: (1 + t * t) ** (-m) * np.exp(-mu * np.arctan(t)),
                -np.inf, np.inf)[0]

    def cdf(t):
        return quad(lambda s: (1 + s * s) ** (-m)
                    * np.exp(-mu * np.arctan(s)) / norm, -np.inf, t)[0]

    grid = np.quantile(x, np.linspace(0.05, 0.95, 19))
    emp = np.searchsorted(np.sort(x), grid) / x.size
    ref = np.array([cdf(t) for t in grid])
    assert np.max(np.abs(emp - ref)) < 0.02


def test_theta_delta_real_case_matches_theta():
    # delta = 0 must reduce to the undeformed disk law
    z = sampling.sample_theta_delta(2.0, 0.0, sampling.RngStream(5), size=20000)
    _, p = sps.kstest(np.abs(z) ** 2, sps.beta(1, 1.0).cdf)
    assert p > 1e-3


def test_theta_delta_domain_validation():
    with pytest.raises(ValueError):
        sampling.sample_theta_delta(0.0, -0.6, sampling.RngStream(6))
    with pytest.raises(ValueError):
        sampling.sample_theta_delta(1.0, -1.1, sampling.RngStream(6))
    # wide domain used by the iota image law must be accepted
    sampling.sample_theta_delta(2.0, -0.9 - 0.3j, sampling.RngStream(6))


def test_ensemble_spec_validation():
    with pytest.raises(ValueError):
        sampling.EnsembleSpec("nope", 4, 2.0)
    with pytest.raises(ValueError):
        sampling.EnsembleSpec(sampling.REAL_ORTHOGONAL, 5, 2.0, a=0.0, b=0.0)
    with pytest.raises(ValueError):
        sampling.EnsembleSpec(sampling.CIRCULAR_JACOBI, 4, 2.0)


def test_circular_coefficients_shape_and_last_unimodular():
    spec = sampling.EnsembleSpec(sampling.CIRCULAR, 6, 2.0)
    alpha = sampling.sample_ensemble_coefficients(spec, sampling.RngStream(7))
    assert alpha.shape == (6,)
    assert abs(abs(alpha[-1]) - 1.0) < 1e-15
    batch = sampling.sample_ensemble_coefficients(
        spec, sampling.RngStream(7), size=5)
    assert batch.shape == (5, 6)


def test_real_orthogonal_coefficients_are_real():
    spec = sampling.EnsembleSpec(
        sampling.REAL_ORTHOGONAL, 6, 2.0, a=-0.5, b=-0.5)
    alpha = sampling.sample_ensemble_coefficients(spec, sampling.RngStream(8))
    assert np.allclose(alpha.imag, 0.0)
    assert alpha.shape == (6,)
