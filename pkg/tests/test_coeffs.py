import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbens import coeffs


def disk_points(max_mod=0.95):
    return st.complex_numbers(max_magnitude=max_mod, allow_nan=False,
                              allow_infinity=False)


def test_known_modified_pair():
    gamma = coeffs.modified_from_regular([0.5, 0.3j])
    assert np.allclose(gamma, [0.5, -0.3j])


def test_moduli_preserved():
    alpha = np.array([0.3 + 0.4j, -0.2j, 0.7])
    gamma = coeffs.modified_from_regular(alpha)
    assert np.allclose(np.abs(gamma), np.abs(alpha))


@given(st.lists(disk_points(), min_size=1, max_size=8))
@settings(max_examples=200, deadline=None)
def test_convention_roundtrip(alpha):
    gamma = coeffs.modified_from_regular(alpha)
    back = coeffs.regular_from_modified(gamma)
    assert np.allclose(back, alpha, atol=1e-10)


def test_reverse_shape_and_last_entry():
    alpha = np.array([0.1, 0.2j, np.exp(0.7j)])
    rev = coeffs.reverse(alpha)
    assert rev.size == alpha.size
    assert rev[-1] == alpha[-1]
    assert np.allclose(rev[:-1], -alpha[-1] * np.conj(alpha[-2::-1]))
    with pytest.raises(ValueError):
        coeffs.reverse([0.1, 0.5])


@given(st.lists(disk_points(0.9), min_size=1, max_size=6),
       st.floats(-np.pi, np.pi))
@settings(max_examples=200, deadline=None)
def test_reverse_involution_on_unitary_sequences(head, angle):
    # involution requires the final coefficient on the unit circle
    alpha = np.array(head + [np.exp(1j * angle)])
    twice = coeffs.reverse(coeffs.reverse(alpha))
    assert np.allclose(twice, alpha, atol=1e-13)


@given(disk_points(0.97))
@settings(max_examples=200, deadline=None)
def test_gamma_iota_involution(g):
    once = coeffs.gamma_iota(g)
    assert np.allclose(coeffs.gamma_iota(once), g, atol=1e-12)


def test_degenerate_modified_rejected():
    # interior coefficient at 1 breaks the product factor
    with pytest.raises(coeffs.DegenerateCoefficientError):
        coeffs.regular_from_modified([1.0, 0.2])


def test_is_unitary():
    assert coeffs.is_unitary([0.3, np.exp(0.7j)])
    assert not coeffs.is_unitary([0.3, 0.5])
