import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from putlab.errors import CapabilityError, NotPSDError, ValidationError
from putlab.hermitian import eig, matrix_power, min_eigenvalue, support_projector

from conftest import random_density, random_hermitian

PAULI_X = np.array([[0, 1], [1, 0]])


def test_eig_identity():
    es = eig(np.eye(2))
    np.testing.assert_allclose(es.eigenvalues, [1, 1])


def test_eig_diagonal_sorted_with_basis_vectors():
    es = eig(np.diag([1.0, 3.0]))
    np.testing.assert_allclose(es.eigenvalues, [3, 1])
    np.testing.assert_allclose(np.abs(es.eigenvectors), [[0, 1], [1, 0]])


def test_eig_pauli_x():
    # characteristic polynomial t**2 - 1
    np.testing.assert_allclose(eig(PAULI_X).eigenvalues, [1, -1], atol=1e-15)


def test_non_hermitian_rejected():
    with pytest.raises(ValidationError):
        eig(np.array([[0, 1], [0, 0]]))


def test_dimension_cap():
    with pytest.raises(CapabilityError):
        eig(np.eye(9))


@pytest.mark.parametrize("m, expected", [
    (np.eye(3), np.eye(3)),
    (np.diag([4.0, 0.0]), np.diag([2.0, 0.0])),
    (np.diag([4.0, 1.0]), np.diag([2.0, 1.0])),
])
def test_matrix_power_half(m, expected):
    np.testing.assert_allclose(matrix_power(m, 0.5), expected, atol=1e-14)


def test_matrix_power_rejects_negative_spectrum():
    with pytest.raises(NotPSDError):
        matrix_power(np.diag([1.0, -1e-6]), 0.5)


def test_matrix_power_tolerates_tiny_negative_noise():
    np.testing.assert_allclose(matrix_power(np.diag([1.0, -1e-12]), 0.5), np.diag([1.0, 0.0]))


def test_min_eigenvalue_examples():
    assert min_eigenvalue(np.eye(2)) == pytest.approx(1)
    assert min_eigenvalue(np.diag([1.0, -2.0])) == pytest.approx(-2)
    assert min_eigenvalue(PAULI_X) == pytest.approx(-1)


dims = st.integers(min_value=1, max_value=8)
seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_reconstruction_and_orthonormality(d, seed):
    m = random_hermitian(np.random.default_rng(seed), d)
    es = eig(m)
    assert np.linalg.norm(es.reconstruct() - m) < 1e-10
    v = es.eigenvectors
    assert np.linalg.norm(v.conj().T @ v - np.eye(d)) < 1e-10
    assert np.all(np.diff(es.eigenvalues) <= 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=6), st.integers(min_value=1, max_value=6), seeds)
def test_power_endpoints(d, rank, seed):
    rank = min(rank, d)
    rho = random_density(np.random.default_rng(seed), d, rank)
    np.testing.assert_allclose(matrix_power(rho, 1.0), rho, atol=1e-10)
    p = matrix_power(rho, 0.0)
    # projector onto the support: idempotent, trace = rank, fixes rho
    np.testing.assert_allclose(p @ p, p, atol=1e-10)
    assert np.trace(p).real == pytest.approx(rank, abs=1e-9)
    np.testing.assert_allclose(p @ rho, rho, atol=1e-10)
    np.testing.assert_allclose(support_projector(rho), p)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=5), seeds,
       st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=1))
def test_power_composition(d, seed, a, b):
    rho = random_density(np.random.default_rng(seed), d)
    lhs = matrix_power(matrix_power(rho, a), b)
    rhs = matrix_power(rho, a * b)
    assert np.abs(lhs - rhs).max() < 1e-9
