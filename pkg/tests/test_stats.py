import numpy as np
import pytest
from scipy.integrate import quad

from cbens import stats
from cbens.roots import PointSample, UPPER_HALF_PLANE
from cbens.sampling import CIRCULAR_JACOBI, EnsembleSpec, RngStream


def test_disk_density_small_n():
    # n = 1: uniform density on the disk
    z = np.array([0.2 + 0.1j, -0.5j])
    assert np.allclose(stats.rho1_trunc_cue(z, 1), 1 / np.pi)
    # geometric series structure for larger n
    val = stats.rho1_trunc_cue(0.5, 3)
    expected = (1 + 2 * 0.25 + 3 * 0.25 ** 2) / np.pi
    assert np.allclose(val, expected)


def test_radial_cdf_consistent_with_density():
    n = 5
    for r in (0.2, 0.6, 0.9):
        mass, _ = quad(
            lambda s: 2 * np.pi * s * stats.rho1_trunc_cue(s, n), 0, r)
        assert np.allclose(stats.rho1_trunc_cue_radial_cdf(r, n), mass,
                           atol=1e-10)
    assert np.allclose(stats.rho1_trunc_cue_radial_cdf(1.0, n), n)


def test_edge_kernel_closed_form_vs_quadrature():
    for y in (1e-6, 1e-3, 0.3, 1.0, 2.5):
        closed = stats.edge_kernel_intensity(1j * y)
        direct = stats.edge_kernel_intensity_quadrature(y)
        assert np.allclose(closed, direct, rtol=1e-8)


def test_edge_kernel_depends_only_on_height():
    a = stats.edge_kernel_intensity(3.0 + 0.7j)
    b = stats.edge_kernel_intensity(-2.0 + 0.7j)
    assert np.allclose(a, b)


def test_trunc_density_oracle_normalizes():
    spec = EnsembleSpec(CIRCULAR_JACOBI, 2, 2.0, delta=0.5 + 0.3j)
    gen = np.random.default_rng(0)
    pts = (np.sqrt(gen.random(200000))
           * np.exp(2j * np.pi * gen.random(200000)))
    dens = stats.trunc_density_oracle(spec, pts)
    mass = np.pi * np.mean(dens)  # monte carlo over the uniform disk law
    assert abs(mass - 1.0) < 0.01


def test_count_in_box():
    pts = PointSample(np.array([1 + 1j, 2 + 0.5j, 11 + 1j, 5 + 4j, 5 + 0j]),
                      frame=UPPER_HALF_PLANE)
    assert stats.count_in_box(pts, (0, 10, 0, 3)) == 3  # closed box
    assert stats.count_in_box(pts, (0, 12, 0, 4)) == 5


def test_ks_two_sample_wrapper():
    gen = np.random.default_rng(1)
    stat, p = stats.ks_two_sample(gen.normal(size=4000),
                                  gen.normal(size=4000))
    assert 0 <= stat <= 1 and p > 1e-3


def test_identity_suite_rejects_unknown():
    with pytest.raises(ValueError):
        stats.mc_identity_suite("no_such_identity", {}, 10, RngStream(0))


def test_identity_suite_small_run_passes():
    report = stats.mc_identity_suite(
        stats.REVERSED_CIRCULAR, {"beta": 2.0, "n": 4}, 20000, RngStream(2))
    assert report["passed"]
