import numpy as np
import pytest

from cbens import cmv, coeffs, dirac, sampling


def draw_gamma(seed, n, radius=0.6):
    gen = np.random.default_rng(seed)
    return (radius * np.sqrt(gen.random(n))
            * np.exp(2j * np.pi * gen.random(n)))


def test_cayley_roundtrip():
    z = np.array([1j, 2 + 3j, 0.1 + 0.5j])
    assert np.allclose(dirac.cayley_inverse(dirac.cayley(z)), z, atol=1e-13)
    assert np.allclose(dirac.cayley(1j), 0.0)


def test_first_step_from_half():
    path = dirac.path_from_modified([0.5])
    assert np.allclose(path.z[0], 1j)
    assert np.allclose(path.z[1], 3j, atol=1e-13)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_path_routes_agree(seed):
    gamma = draw_gamma(seed, 12)
    alpha = coeffs.regular_from_modified(gamma)
    routes = [
        dirac.path_from_regular(alpha),
        dirac.path_from_modified(gamma),
        dirac.path_disk_recursion(gamma),
        dirac.path_affine_composition(gamma),
    ]
    for other in routes[1:]:
        assert np.allclose(other.b, routes[0].b, atol=1e-10)


def test_pulled_back_path_pins_endpoint():
    gamma = draw_gamma(3, 8)
    alpha = coeffs.regular_from_modified(gamma)
    alpha[-1] = np.exp(0.4j)
    pulled = dirac.pulled_back_path(dirac.reversed_path(alpha))
    assert pulled.b[pulled.n - 1] == 0.0
    assert np.allclose(pulled.z[pulled.n - 1], 1j)


def test_weight_matrices_shape_and_determinant():
    gamma = draw_gamma(4, 6)
    path = dirac.path_from_modified(gamma)
    R = dirac.weight_matrices(path)
    assert R.shape == (6, 2, 2)
    # each weight is symmetric positive with unit determinant
    assert np.allclose(R, np.swapaxes(R, -1, -2))
    assert np.allclose(np.linalg.det(R), 0.25)


def test_operator_rejects_atom_at_one():
    b = np.append(draw_gamma(5, 6), 1.0)
    path = dirac.HyperbolicPath.from_disk_points(b)
    with pytest.raises(ValueError):
        dirac.dirac_operator(path)


def test_constant_path_solution_is_trigonometric():
    path = dirac.HyperbolicPath.from_halfplane_points(
        np.full(101, 1j, dtype=complex))
    op = dirac.FiniteDiracOperator(path, u1=np.array([0.0, -1.0]))
    for z in (0.7, 2.3 + 0.4j):
        H = dirac.canonical_solution(op, z, 1.0)
        assert np.allclose(H[0], np.cos(z / 2), atol=1e-10)
        assert np.allclose(H[1], -np.sin(z / 2), atol=1e-10)


def test_secular_zeros_match_spectrum():
    spec = sampling.EnsembleSpec(sampling.CIRCULAR, 8, 2.0)
    alpha = sampling.sample_ensemble_coefficients(
        spec, sampling.RngStream(99, 17))
    gamma = coeffs.modified_from_regular(alpha)
    path = dirac.path_from_modified(gamma)
    op = dirac.dirac_operator(path)
    eigs = np.linalg.eigvals(cmv.build_cmv(alpha))
    lam = 8 * np.angle(eigs)  # spectrum of the operator in (-8 pi, 8 pi]
    vals = dirac.secular_function(op, lam)
    assert np.max(np.abs(vals)) < 1e-8


def test_structure_function_matches_reversed_polynomial():
    alpha = sampling.sample_theta(2.0, sampling.RngStream(5, 1), size=9)
    alpha[-1] = np.exp(1.3j)
    n = alpha.size
    z = np.array([0.3, -1.1 + 0.2j, 4.0j])
    lhs = dirac.finite_structure_function(alpha, z)
    gamma = coeffs.modified_from_regular(coeffs.reverse(alpha)[:-1])
    q, _ = cmv.modified_szego_polynomials(gamma)[-1]
    rhs = (np.exp(-1j * z * (n - 1) / (2 * n))
           * np.polyval(q[::-1], np.exp(1j * z / n)))
    assert np.allclose(lhs, rhs, atol=1e-9 * np.max(np.abs(rhs)))


def test_trace_identities_on_random_path():
    gamma = draw_gamma(6, 10, radius=0.4)
    alpha = coeffs.regular_from_modified(gamma)
    # close the sequence so the endpoint is real and not an atom at 1
    alpha = np.append(alpha, -1.0)
    gamma_full = coeffs.modified_from_regular(alpha)
    path = dirac.path_from_modified(gamma_full)
    op = dirac.dirac_operator(path)
    assert dirac.hs_norm(op) >= 0.0
    assert np.isfinite(dirac.integral_trace(op))
