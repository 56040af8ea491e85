import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbens import cmv, coeffs, sampling


def random_alpha(seed, n, last_unimodular=True):
    gen = np.random.default_rng(seed)
    alpha = sampling.sample_theta(2.0, gen, size=n)
    if last_unimodular:
        alpha[-1] = np.exp(1j * gen.uniform(-np.pi, np.pi))
    return alpha


def test_one_by_one():
    C = cmv.build_cmv([0.3 + 0.4j])
    assert C.shape == (1, 1)
    assert np.allclose(C, np.conj(0.3 + 0.4j))


def test_swap_matrix():
    C = cmv.build_cmv([0.0, 1.0])
    assert np.allclose(C, [[0.0, 1.0], [1.0, 0.0]])


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_unitary_when_last_coefficient_unimodular(n):
    alpha = random_alpha(7 * n, n)
    C = cmv.build_cmv(alpha)
    assert np.allclose(C @ C.conj().T, np.eye(n), atol=1e-12)


def test_truncate_removes_first_row_and_column():
    alpha = random_alpha(11, 4)
    C = cmv.build_cmv(alpha)
    T = cmv.truncate_matrix(C)
    assert T.shape == (3, 3)
    assert np.allclose(T, C[1:, 1:])


def test_perturb_endpoints():
    alpha = random_alpha(3, 5)
    rev = coeffs.reverse(alpha)
    assert np.allclose(cmv.perturb_coefficients(alpha, 1.0), rev)
    at_zero = cmv.perturb_coefficients(alpha, 0.0)
    assert np.allclose(at_zero[:-1], rev[:-1]) and at_zero[-1] == 0.0
    with pytest.raises(ValueError):
        cmv.perturb_coefficients(alpha, 1.5)


def test_characteristic_polynomial_matches_eigenvalues():
    alpha = random_alpha(19, 6)
    chi = cmv.characteristic_polynomial(alpha)
    eigs = np.linalg.eigvals(cmv.build_cmv(alpha))
    vals = np.polyval(chi[::-1], eigs)
    assert np.max(np.abs(vals)) < 1e-10


def test_szego_recursion_degrees_and_monic():
    alpha = random_alpha(23, 4, last_unimodular=False)
    seq = cmv.szego_polynomials(alpha)
    for k, (p, ps) in enumerate(seq):
        assert p.shape[-1] == k + 1
        assert np.allclose(p[..., -1], 1.0)  # monic
        # reversed-conjugate relation between the two families
        assert np.allclose(ps, np.conj(p)[..., ::-1], atol=1e-12)


@given(st.integers(0, 2 ** 31), st.integers(1, 6))
@settings(max_examples=50, deadline=None)
def test_modified_recursion_agrees_with_regular(seed, n):
    alpha = random_alpha(seed, n, last_unimodular=False)
    gamma = coeffs.modified_from_regular(alpha)
    phi_seq = cmv.szego_polynomials(alpha)
    psi_seq = cmv.modified_szego_polynomials(gamma)
    # the normalized family is a scalar multiple of the monic one at each
    # degree, so dividing out the leading coefficient recovers phi
    for (p, _), (q, _) in zip(phi_seq[1:], psi_seq[1:]):
        assert np.allclose(q / q[..., -1:], p, atol=1e-9)
