import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from putlab.divergences import (classical_chernoff, classical_relative_entropy,
                                minimize_on_unit_interval, quantum_chernoff,
                                quantum_relative_entropy, utility_a, utility_s)
from putlab.errors import DomainError, NotPSDError
from putlab.mechanisms import block_design_mechanism, complete_design, proposed_mechanism
from putlab.oracle import chernoff_grid_oracle, random_ldp_sampler, random_stochastic
from putlab.put import depolarized_overlap, xlogx
from putlab.states import depolarized_pure, sic_states

from conftest import random_density


def test_classical_chernoff_example():
    rep = classical_chernoff([1, 0], [0.5, 0.5])
    assert rep.value == pytest.approx(math.log(2))


def test_classical_chernoff_symmetric_pair():
    rep = classical_chernoff([0.8, 0.2], [0.2, 0.8])
    assert rep.value == pytest.approx(math.log(5 / 4), abs=1e-12)
    assert rep.s_opt == pytest.approx(0.5, abs=1e-6)


def test_chernoff_identical_is_zero():
    assert classical_chernoff([0.3, 0.7], [0.3, 0.7]).value == pytest.approx(0, abs=1e-12)
    rho = depolarized_pure([1, 0], 0.4)
    assert quantum_chernoff(rho, rho).value == pytest.approx(0, abs=1e-12)


def test_chernoff_disjoint_support_is_infinite():
    assert classical_chernoff([1, 0], [0, 1]).is_infinite
    assert quantum_chernoff(np.diag([1.0, 0]), np.diag([0, 1.0])).is_infinite


def test_relative_entropy_examples():
    expected = math.log(2) + xlogx(0.8) + xlogx(0.2)
    assert classical_relative_entropy([0.8, 0.2], [0.5, 0.5]) == pytest.approx(expected, abs=1e-14)
    assert classical_relative_entropy([0.5, 0.5], [1, 0]) == math.inf
    assert classical_relative_entropy([1, 0], [0.5, 0.5]) == pytest.approx(math.log(2))


def test_quantum_relative_entropy_against_maximally_mixed():
    mu = 0.3
    rho = depolarized_pure(sic_states(2)[1], mu)
    expected = math.log(2) + xlogx(1 - mu / 2) + xlogx(mu / 2)
    assert quantum_relative_entropy(rho, np.eye(2) / 2) == pytest.approx(expected, abs=1e-12)
    assert quantum_relative_entropy(np.eye(2) / 2, np.diag([1.0, 0])) == math.inf


def test_rejects_non_state():
    with pytest.raises(NotPSDError):
        quantum_chernoff(np.diag([1.2, -0.2]), np.eye(2) / 2)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("mu", [0.0, 0.2, 0.7, 1.0, 1.3])
def test_depolarized_pair_matches_overlap_formula(d, mu):
    psi = sic_states(d)
    rep = quantum_chernoff(depolarized_pure(psi[0], mu), depolarized_pure(psi[3], mu))
    g = depolarized_overlap(1 / (d + 1), d, mu)
    assert rep.value == pytest.approx(-math.log(g), abs=1e-10)
    if 0 < mu < d / (d - 1) and mu != 1:
        assert rep.s_opt == pytest.approx(0.5, abs=1e-6)


seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), seeds)
def test_chernoff_symmetric_in_arguments(d, seed):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(rng, d), random_density(rng, d)
    a, b = quantum_chernoff(rho, sigma), quantum_chernoff(sigma, rho)
    assert a.value == pytest.approx(b.value, abs=1e-10)
    assert a.s_opt + b.s_opt == pytest.approx(1, abs=1e-6)


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), st.integers(1, 3), seeds)
def test_golden_section_not_worse_than_dense_grid(d, rank, seed):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(rng, d, min(rank, d)), random_density(rng, d)
    grid_value = chernoff_grid_oracle(rho, sigma, grid_size=2000)
    assert quantum_chernoff(rho, sigma).value >= grid_value - 1e-8


def test_minimizer_handles_boundary_minimum():
    s, val = minimize_on_unit_interval(lambda s: 2 - s)
    assert s == 1.0 and val == 1.0


def test_utility_examples():
    eps = math.log(4)
    rr = block_design_mechanism(complete_design(2, 1), eps)
    assert utility_s(rr).value == pytest.approx(math.log(5 / 4), abs=1e-12)
    assert utility_s(rr).argmin == (1, 2)
    expected_a = math.log(2) + xlogx(0.8) + xlogx(0.2)
    assert utility_a(rr).value == pytest.approx(expected_a, abs=1e-12)


def test_utility_eta_domain():
    with pytest.raises(DomainError):
        utility_s(np.eye(2), 0.0)


def test_uninformative_mechanism_has_zero_utility():
    q = np.full((3, 2), 0.5)
    assert utility_s(q).value == pytest.approx(0, abs=1e-12)
    assert utility_a(q, 0.5).value == pytest.approx(0, abs=1e-12)


def test_quantum_and_classical_paths_agree_on_diagonal_outputs():
    q = np.array([[0.6, 0.3, 0.1], [0.2, 0.5, 0.3]])
    diag = np.array([np.diag(row) for row in q])
    for eta in (0.4, 1.0):
        assert utility_s(diag, eta).value == pytest.approx(utility_s(q, eta).value, abs=1e-10)
        assert utility_a(diag, eta).value == pytest.approx(utility_a(q, eta).value, abs=1e-10)


def test_data_processing_inequality():
    # post-processing never increases either utility
    rng = np.random.default_rng(99)
    pairs = 0
    for v in (2, 3, 4):
        for b in (2, 4):
            for q in random_ldp_sampler(v, b, 1.0, 17, int(rng.integers(2 ** 31))):
                post = random_stochastic(b, int(rng.integers(1, 5)), rng)
                eta = float(rng.uniform(0.1, 1.0))
                assert utility_s(q @ post, eta).value <= utility_s(q, eta).value + 1e-9
                assert utility_a(q @ post, eta).value <= utility_a(q, eta).value + 1e-9
                pairs += 1
    assert pairs >= 100
    for _ in range(100):
        v = int(rng.integers(2, 6))
        mech = proposed_mechanism(v, float(rng.uniform(0.1, 2)))
        # a depolarising channel acting after the mechanism
        lam = float(rng.uniform(0, 1))
        d = mech.dim
        later = np.array([(1 - lam) * rho + lam * np.eye(d) / d for rho in mech.outputs])
        eta = float(rng.uniform(0.1, 1.0))
        assert utility_s(later, eta).value <= utility_s(mech, eta).value + 1e-9
        assert utility_a(later, eta).value <= utility_a(mech, eta).value + 1e-9
