import numpy as np
import pytest

from cbens import roots


def test_quadratic():
    # z^2 - 1, ascending coefficients
    r = np.sort_complex(roots.find_roots([-1.0, 0.0, 1.0]))
    assert np.allclose(r, [-1.0, 1.0], atol=1e-12)


def test_roots_at_origin_kept_with_multiplicity():
    # z^2 (z - 2)
    r = roots.find_roots([0.0, 0.0, -2.0, 1.0])
    assert np.count_nonzero(r == 0) == 2
    assert np.allclose(np.max(np.abs(r)), 2.0, atol=1e-12)


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        roots.find_roots([1.0])
    with pytest.raises(ValueError):
        roots.find_roots([1.0, 2.0, 0.0])
    with pytest.raises(ValueError):
        roots.find_roots([0.0, 0.0])


def test_random_polynomials_small_backward_error():
    gen = np.random.default_rng(5)
    for deg in (3, 12, 60):
        c = gen.normal(size=deg + 1) + 1j * gen.normal(size=deg + 1)
        z = roots.find_roots(c)
        assert z.size == deg
        vals = np.polyval(c[::-1], z)
        scale = np.polyval(np.abs(c)[::-1], np.abs(z))
        assert np.max(np.abs(vals) / scale) < 1e-10


def test_batch_matches_scalar():
    gen = np.random.default_rng(6)
    c = gen.normal(size=(20, 9)) + 1j * gen.normal(size=(20, 9))
    batch = roots.find_roots_batch(c)
    for row in range(20):
        a = np.sort_complex(batch[row])
        b = np.sort_complex(roots.find_roots(c[row]))
        assert np.allclose(a, b, atol=1e-8)


def test_high_degree_clustered_roots():
    # roots near the unit circle, the hard case for the initial guess
    gen = np.random.default_rng(7)
    r = 0.98 * np.sqrt(gen.random(200)) * np.exp(2j * np.pi * gen.random(200))
    c = np.array([1.0 + 0j])
    for root in r:
        c = np.convolve(c, np.array([-root, 1.0]))
    z = roots.find_roots(c)
    vals = np.polyval(c[::-1], z)
    scale = np.polyval(np.abs(c)[::-1], np.abs(z))
    assert np.max(np.abs(vals) / scale) < 1e-10


def test_edge_scale_maps_and_drops():
    sample = roots.PointSample(np.array([1.0, 1j, -1.0, 0.5]))
    out = roots.edge_scale(sample, 4)
    assert out.frame == roots.UPPER_HALF_PLANE
    assert out.metadata["dropped"] == 1  # the point on the cut
    assert out.points.size == 3
    # z = 1 maps to the origin, z = i to 2 pi n / 4... real part n theta
    assert np.allclose(out.points[0], 0.0)
    assert np.allclose(out.points[1], 4 * np.pi / 2)
    # interior point 0.5 gains positive imaginary part
    assert out.points[2].imag > 0


def test_edge_scale_requires_disk_frame():
    w = roots.PointSample(np.array([1j]), frame=roots.UPPER_HALF_PLANE)
    with pytest.raises(ValueError):
        roots.edge_scale(w, 3)
