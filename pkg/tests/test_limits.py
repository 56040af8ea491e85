import numpy as np
import pytest

from cbens import limits
from cbens.sampling import RngStream


def config(**kw):
    base = dict(beta=2.0, family=limits.SINE,
                z_grid=np.linspace(-4, 4, 9), step=1e-3,
                rng=RngStream(11, 0))
    base.update(kw)
    return limits.SdeConfig(**base)


def test_default_u_min_tail_bound():
    u = limits.default_u_min(2.0, 10.0)
    assert u < 0
    # remaining potential mass integrates below the tail tolerance
    assert np.exp(2.0 * u / 4) <= limits.POTENTIAL_TAIL_TOL * 2


def test_noise_free_solution_is_trigonometric():
    field = limits.simulate_H(config(), noise=False)
    z = field.z_grid
    assert np.allclose(field.H0[0], np.cos(z / 2), atol=1e-4)
    assert np.allclose(field.H0[1], -np.sin(z / 2), atol=1e-4)


def test_hp_delta_zero_equals_sine_pathwise():
    cfg_s = config()
    cfg_h = config(family=limits.HUA_PICKRELL, delta=0.0)
    inc = limits.generate_increments(cfg_s, cfg_s.rng.generator())
    a = limits.simulate_H(cfg_s, increments=inc)
    b = limits.simulate_H(cfg_h, increments=inc)
    assert np.max(np.abs(a.H0 - b.H0)) < 1e-12


def test_structure_and_secular_values():
    field = limits.simulate_H(config(), noise=False)
    e = limits.structure_fn(field, field.z_grid)
    zeta = limits.secular_fn(field, field.z_grid)
    z = field.z_grid
    assert np.allclose(e, np.cos(z / 2) + 1j * np.sin(z / 2), atol=1e-3)
    # boundary q for the sine family couples both components
    assert np.all(np.isfinite(zeta))


def test_perturbation_coefficient_limits():
    field = limits.simulate_H(config(), noise=True)
    f = limits.perturbed_structure_fn(field, 0.5)
    assert np.isfinite(f(np.array([0.3 + 0.2j]))).all()
    with pytest.raises(ValueError):
        limits.perturbed_structure_fn(field, 1.5)


def test_count_zeros_analytic():
    f = lambda z: (z - (1 + 1j)) * (z - (3 + 0.5j)) * np.exp(0.1 * z)
    assert limits.count_zeros(f, (0, 4, 0.1, 2)) == 2
    assert limits.count_zeros(f, (0, 4, 1.4, 2)) == 0


def test_locate_zeros_analytic():
    f = lambda z: np.sin(z) * (z - (2 + 1j))
    found = limits.locate_zeros(f, (0.5, 4, -0.5, 2))
    found = np.sort_complex(np.asarray(found))
    expected = np.sort_complex(np.array([np.pi, 2 + 1j]))
    assert found.size == 2
    assert np.allclose(found, expected, atol=1e-6)


def test_family_validation():
    with pytest.raises(ValueError):
        config(family="airy")
    with pytest.raises(ValueError):
        config(family=limits.BESSEL)  # needs the a parameter
