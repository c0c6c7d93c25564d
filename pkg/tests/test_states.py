import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from putlab.errors import CapabilityError, DomainError, ValidationError
from putlab.hermitian import eig
from putlab.mechanisms import CQMechanism, proposed_mechanism
from putlab.states import (Hypothesis, as_density_operator, depolarized_pure, ensemble_state,
                           projector, sic_states)


@pytest.mark.parametrize("d", [2, 3])
def test_sic_family(d):
    psi = sic_states(d)
    assert psi.shape == (d * d, d)
    np.testing.assert_allclose(np.linalg.norm(psi, axis=1), 1, atol=1e-12)
    frame = sum(projector(p) for p in psi)
    assert np.abs(frame - d * np.eye(d)).max() < 1e-9
    gram = np.abs(psi.conj() @ psi.T) ** 2
    off = gram[~np.eye(d * d, dtype=bool)]
    assert np.abs(off - 1 / (d + 1)).max() < 1e-9


def test_sic_deterministic_order():
    np.testing.assert_array_equal(sic_states(3), sic_states(3))
    # (a, b) = (0, 0) is the fiducial itself
    np.testing.assert_allclose(sic_states(3)[0], np.array([0, 1, -1]) / math.sqrt(2))


@pytest.mark.parametrize("d", [1, 4, 5])
def test_sic_unsupported(d):
    with pytest.raises(CapabilityError, match=r"\(2, 3\)"):
        sic_states(d)


def test_depolarized_examples():
    psi = sic_states(2)[1]
    np.testing.assert_allclose(depolarized_pure(psi, 0.0), projector(psi))
    np.testing.assert_allclose(depolarized_pure(psi, 1.0), np.eye(2) / 2)
    # upper boundary mu = d/(d-1) = 2: I - |0><0| = diag(0, 1), still PSD
    rho = depolarized_pure([1, 0], 2.0)
    np.testing.assert_allclose(rho, np.diag([0, 1]))
    as_density_operator(rho)


@pytest.mark.parametrize("mu", [-0.1, 2.01])
def test_depolarized_domain(mu):
    with pytest.raises(DomainError):
        depolarized_pure([1, 0], mu)


def test_unnormalised_state_rejected():
    with pytest.raises(ValidationError):
        depolarized_pure([1, 1], 0.5)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("mu", [0.0, 0.3, 1.0, 1.2])
def test_depolarized_spectrum(d, mu):
    mu = min(mu, d / (d - 1))
    w = eig(depolarized_pure(sic_states(d)[2], mu)).eigenvalues
    expected = sorted([mu / d + 1 - mu] + [mu / d] * (d - 1), reverse=True)
    np.testing.assert_allclose(w, expected, atol=1e-10)


def test_hypothesis_probabilities():
    np.testing.assert_allclose(Hypothesis(4, 2, 1.0).probabilities(), [0, 1, 0, 0])
    np.testing.assert_allclose(Hypothesis(4, 0).probabilities(), [0.25] * 4)
    np.testing.assert_allclose(Hypothesis(4, 1, 0.6).probabilities(), [0.7, 0.1, 0.1, 0.1])
    with pytest.raises(DomainError):
        Hypothesis(4, 1, 0.0)
    with pytest.raises(DomainError):
        Hypothesis(4, 5, 0.5)


def test_ensemble_point_mass_picks_output():
    mech = proposed_mechanism(4, 1.0)
    np.testing.assert_allclose(ensemble_state(mech, Hypothesis(4, 3, 1.0)), mech.outputs[2])


@pytest.mark.parametrize("eps", [0.2, 1.0, 3.0])
@pytest.mark.parametrize("v", [4, 9])
def test_uniform_ensemble_over_full_sic_is_maximally_mixed(v, eps):
    mech = proposed_mechanism(v, eps)
    d = mech.dim
    np.testing.assert_allclose(ensemble_state(mech, Hypothesis(v, 0)), np.eye(d) / d, atol=1e-12)


def test_ensemble_against_direct_sum():
    q0 = depolarized_pure([1, 0], 0.2)
    q1 = depolarized_pure(np.array([1, 1j]) / math.sqrt(2), 0.5)
    mech = CQMechanism(np.array([q0, q1]))
    p = Hypothesis(2, 1, 0.5).probabilities()   # (0.75, 0.25)
    direct = p[0] * q0 + p[1] * q1
    np.testing.assert_allclose(ensemble_state(mech, Hypothesis(2, 1, 0.5)), direct, atol=1e-15)


def test_ensemble_alphabet_mismatch():
    with pytest.raises(ValidationError):
        ensemble_state(proposed_mechanism(4, 1.0), Hypothesis(5, 1, 1.0))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=9), st.floats(min_value=0.05, max_value=3),
       st.floats(min_value=0.01, max_value=1), st.floats(min_value=0.01, max_value=1),
       st.floats(min_value=0, max_value=1))
def test_ensemble_is_affine_in_hypothesis(v, eps, eta1, eta2, t):
    mech = proposed_mechanism(v, eps)
    h1, h2 = Hypothesis(v, 1, eta1), Hypothesis(v, v, eta2)
    mixed_p = t * h1.probabilities() + (1 - t) * h2.probabilities()
    lhs = np.tensordot(mixed_p, mech.outputs, axes=1)
    rhs = t * ensemble_state(mech, h1) + (1 - t) * ensemble_state(mech, h2)
    assert np.abs(lhs - rhs).max() < 1e-12
