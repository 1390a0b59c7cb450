# -*- coding: utf-8 -*-
"""Testes de layouts, estados e defasagem"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from utils.linalg.matrix_ops import von_neumann_entropy
from utils.states.density import (
    DensityOperator,
    PureState,
    SystemLayout,
    as_pure,
    basis_state,
    dephase,
    is_incoherent,
    is_quantum_incoherent,
    maximally_coherent,
    partial_trace_state,
    purify,
    random_density,
    random_pure,
    relabel,
    schmidt_coefficients,
    schmidt_state,
    state_from_json,
    state_to_json,
    tensor,
    tensor_power,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

def test_layout_rejects_duplicate_labels():
    with pytest.raises(ValueError):
        SystemLayout.of(("A", 2, "A"), ("A", 2, "B"))

def test_layout_resolves_labels_and_parties():
    layout = SystemLayout.of(("A1", 2, "A"), ("B", 2, "B"), ("A2", 3, "A"))
    assert layout.resolve("A") == (0, 2)
    assert layout.resolve(["B", "A2"]) == (1, 2)
    assert layout.resolve(None) == (0, 1, 2)
    assert layout.parties == ("A", "B")
    with pytest.raises(ValueError):
        layout.resolve("C")

def test_replicate_labels(qubit):
    assert qubit.replicate(3).labels == ("S#1", "S#2", "S#3")
    assert qubit.replicate(2, start=2).labels == ("S#2", "S#3")

def test_density_operator_validation(qubit):
    with pytest.raises(ValueError):
        DensityOperator(qubit, np.diag([0.6, 0.6]))
    with pytest.raises(ValueError):
        DensityOperator(qubit, np.diag([1.2, -0.2]))
    with pytest.raises(ValueError):
        DensityOperator(qubit, np.eye(3) / 3)

def test_density_operator_is_read_only(qubit):
    rho = DensityOperator(qubit, np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0

def test_dephase_maximally_coherent(plus):
    assert_allclose(dephase(plus).matrix, np.eye(2) / 2, atol=1e-15)
    assert von_neumann_entropy(dephase(plus).matrix) == pytest.approx(1.0)

def test_maximally_coherent_requires_d_at_least_two():
    with pytest.raises(ValueError):
        maximally_coherent(1)

def test_partial_dephasing_only_touches_selected_party(phi_plus):
    rho = dephase(phi_plus, "B")
    assert_allclose(rho.matrix, np.diag([0.5, 0.0, 0.0, 0.5]), atol=1e-15)
    assert not is_quantum_incoherent(phi_plus, "B")
    assert is_quantum_incoherent(rho, "B")

def test_incoherent_classification(plus, zero):
    assert is_incoherent(zero.density())
    assert not is_incoherent(plus.density())

def test_qi_product_with_basis_state(plus, bipartite):
    state = tensor(plus, basis_state(SystemLayout.single("B", 2, "B"), [1]))
    assert is_quantum_incoherent(state, "B")
    assert not is_quantum_incoherent(state, "S")

def test_tensor_power_keeps_purity(plus):
    psi = tensor_power(plus, 3)
    assert isinstance(psi, PureState)
    assert psi.layout.labels == ("S#1", "S#2", "S#3")
    assert_allclose(np.abs(psi.amplitudes) ** 2, np.full(8, 1 / 8))

def test_as_pure_rejects_mixed(qubit):
    with pytest.raises(ValueError):
        as_pure(DensityOperator(qubit, np.eye(2) / 2))

def test_partial_trace_state_rejects_empty(phi_plus):
    with pytest.raises(ValueError):
        partial_trace_state(phi_plus, [])

def test_relabel_keeps_matrix(phi_plus):
    moved = relabel(phi_plus, labels={"A": "A'"}, parties={"A": "B'"})
    assert moved.layout.labels == ("A'", "B")
    assert moved.layout.parties == ("B'", "B")
    assert_allclose(moved.amplitudes, phi_plus.amplitudes)

def test_random_density_rank_bounds(qubit):
    with pytest.raises(ValueError):
        random_density(qubit, rank=3)
    rho = random_density(qubit, rank=1, seed=3)
    assert rho.is_pure()

def test_random_states_are_reproducible(qubit):
    assert_allclose(random_pure(qubit, seed=11).amplitudes, random_pure(qubit, seed=11).amplitudes)

def test_purify_recovers_state(qubit):
    rho = random_density(qubit, seed=5)
    psi = purify(rho)
    assert_allclose(partial_trace_state(psi, "S").matrix, rho.matrix, atol=1e-10)

def test_schmidt_state_and_coefficients():
    chi = schmidt_state([0.9, 0.1])
    assert_allclose(schmidt_coefficients(chi, "A~"), [0.9, 0.1], atol=1e-12)
    with pytest.raises(ValueError):
        schmidt_state([0.7, 0.7])

def test_json_payload(qubit):
    rho = random_density(qubit, seed=9)
    payload = state_to_json(rho)
    assert payload["layout"] == [["S", 2, "S"]]
    assert_allclose(state_from_json(payload).matrix, rho.matrix)
    with pytest.raises(ValueError):
        state_from_json({"matrix": payload["matrix"]})

@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_dephasing_never_lowers_entropy(seed):
    layout = SystemLayout.of(("A", 2, "A"), ("B", 3, "B"))
    rho = random_density(layout, rank=2, seed=seed)
    partial = von_neumann_entropy(dephase(rho, "B").matrix)
    full = von_neumann_entropy(dephase(rho).matrix)
    assert partial >= von_neumann_entropy(rho.matrix) - 1e-9
    assert full >= partial - 1e-9

def test_haar_mean_purity_of_reduced_qubit(bipartite):
    purities = []
    for k in range(1000):
        reduced = partial_trace_state(random_pure(bipartite, seed=k), "A").matrix
        purities.append(np.trace(reduced @ reduced).real)
    assert np.mean(purities) == pytest.approx(4 / 5, abs=0.02)

@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_dephasing_commutes_with_partial_trace(seed):
    layout = SystemLayout.of(("A", 2, "A"), ("B", 3, "B"))
    rho = random_density(layout, seed=seed)
    for kept in ("A", "B"):
        assert_allclose(partial_trace_state(dephase(rho), kept).matrix,
                        dephase(partial_trace_state(rho, kept)).matrix, atol=1e-13)
    # Δ^B não altera a marginal de A
    assert_allclose(partial_trace_state(dephase(rho, "B"), "A").matrix,
                    partial_trace_state(rho, "A").matrix, atol=1e-13)
