# -*- coding: utf-8 -*-
"""Testes dos canais de Kraus e da certificação IO"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from utils.channels.kraus import (
    KrausChannel,
    ReplacementChannel,
    apply,
    channel_from_json,
    channel_to_json,
    compose,
    controlled_channel,
    cyclic_shift_order,
    dephasing_channel,
    identity_channel,
    is_permutation_invariant,
    permutation_channel,
    random_incoherent_channel,
    random_unitary,
    register_shift,
    replacement_channel,
    symmetrize,
    twirl_channel,
    unitary_channel,
)
from utils.linalg.matrix_ops import trace_distance
from utils.states.density import (
    DensityOperator,
    SystemLayout,
    basis_state,
    dephase,
    is_incoherent,
    random_density,
    tensor,
    tensor_power,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)

def test_non_trace_preserving_rejected(qubit):
    with pytest.raises(ValueError):
        KrausChannel(qubit, qubit, (0.5 * np.eye(2),))

def test_kraus_shape_checked(qubit):
    with pytest.raises(ValueError):
        KrausChannel(qubit, qubit, (np.eye(3),))

def test_apply_rejects_layout_mismatch(qubit):
    rho = random_density(SystemLayout.single("T", 3), seed=1)
    with pytest.raises(ValueError):
        identity_channel(qubit).apply(rho)

def test_complete_dephasing_matches_dephase(bipartite):
    rho = random_density(bipartite, seed=2)
    channel = dephasing_channel(bipartite)
    assert channel.is_incoherent_operation()
    assert_allclose(channel.apply(rho).matrix, dephase(rho).matrix, atol=1e-14)

def test_partial_dephasing_strength(qubit, plus):
    out = dephasing_channel(qubit, strength=0.5).apply(plus)
    assert_allclose(out.matrix, [[0.5, 0.25], [0.25, 0.5]], atol=1e-14)
    with pytest.raises(ValueError):
        dephasing_channel(qubit, strength=1.5)

def test_hadamard_is_not_incoherent(qubit):
    assert not unitary_channel(qubit, HADAMARD).is_incoherent_operation()

def test_random_unitary_is_unitary():
    u = random_unitary(3, seed=4)
    assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)

def test_replacement_channel_outputs_target(qubit):
    target = random_density(qubit, seed=6)
    out = replacement_channel(target).apply(random_density(qubit, seed=7))
    assert_allclose(out.matrix, target.matrix, atol=1e-12)

def test_replacement_to_incoherent_target_is_certified(qubit):
    target = DensityOperator(qubit, np.diag([0.3, 0.7]))
    assert replacement_channel(target).is_incoherent_operation()

def test_permutation_channel_swaps_factors():
    layout = SystemLayout.of(("X", 2, "X"), ("Y", 2, "Y"))
    a = random_density(SystemLayout.single("X", 2), seed=8)
    b = random_density(SystemLayout.single("Y", 2), seed=9)
    out = permutation_channel(layout, [1, 0]).apply(tensor(a, b))
    assert_allclose(out.matrix, np.kron(b.matrix, a.matrix), atol=1e-14)

def test_permutation_channel_rejects_unequal_dims():
    layout = SystemLayout.of(("X", 2, "X"), ("Y", 3, "Y"))
    with pytest.raises(ValueError):
        permutation_channel(layout, [1, 0])

def test_cyclic_shift_order():
    assert cyclic_shift_order(3) == [2, 0, 1]
    assert cyclic_shift_order(3, 2) == [4, 5, 0, 1, 2, 3]

def test_register_shift_moves_kets():
    layout = SystemLayout.single("K", 3)
    shift = register_shift(3)
    assert shift.is_incoherent_operation()
    for k in range(3):
        out = shift.apply(basis_state(layout, [k]))
        assert out.matrix[(k + 1) % 3, (k + 1) % 3] == pytest.approx(1.0)

def test_symmetrize_and_twirl_agree(qubit):
    copies = qubit.replicate(3)
    rho = random_density(copies, seed=10)
    symmetric = symmetrize(rho, 3)
    assert is_permutation_invariant(symmetric, 3)
    assert not is_permutation_invariant(rho, 3)
    twirl = twirl_channel(copies, 3)
    assert twirl.is_incoherent_operation()
    assert_allclose(twirl.apply(rho).matrix, symmetric.matrix, atol=1e-13)

def test_compose_order(qubit, plus):
    hadamard = unitary_channel(qubit, HADAMARD, name="H")
    dephasing = dephasing_channel(qubit)
    # Δ primeiro, depois H
    out = compose(dephasing, hadamard).apply(plus)
    assert_allclose(out.matrix, np.eye(2) / 2, atol=1e-14)
    # H primeiro leva |+⟩ em |0⟩, intacto por Δ
    out = compose(hadamard, dephasing).apply(plus)
    assert_allclose(out.matrix, np.diag([1.0, 0.0]), atol=1e-14)

def test_controlled_channel_acts_only_on_active_branch(qubit):
    register = SystemLayout.single("K", 2)
    flip = unitary_channel(qubit, np.array([[0.0, 1.0], [1.0, 0.0]]), name="X")
    channel = controlled_channel(flip, register, active=1)
    assert channel.is_incoherent_operation()
    layout = qubit.concat(register)
    out = channel.apply(basis_state(layout, [0, 1]))
    assert out.matrix[3, 3] == pytest.approx(1.0)
    out = channel.apply(basis_state(layout, [0, 0]))
    assert out.matrix[0, 0] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        controlled_channel(flip, register, active=2)

def test_channel_json(qubit):
    channel = random_incoherent_channel(qubit, num_kraus=2, seed=12)
    restored = channel_from_json(channel_to_json(channel))
    rho = random_density(qubit, seed=13)
    assert restored.name == channel.name
    assert_allclose(restored.apply(rho).matrix, channel.apply(rho).matrix, atol=1e-14)

@settings(max_examples=25, deadline=None)
@given(seed=seeds, num_kraus=st.integers(min_value=1, max_value=4))
def test_random_incoherent_channels_are_certified_cptp(seed, num_kraus):
    layout = SystemLayout.of(("A", 2, "A"), ("B", 3, "B"))
    channel = random_incoherent_channel(layout, num_kraus=num_kraus, seed=seed)
    assert channel.is_incoherent_operation()
    assert channel.trace_preservation_error() <= 1e-10

def test_functional_apply_matches_method(qubit, plus):
    channel = dephasing_channel(qubit, strength=0.3)
    assert_allclose(apply(channel, plus).matrix, channel.apply(plus).matrix, atol=1e-15)

def test_replacement_channel_defers_kraus_list():
    system = SystemLayout.single("S", 3)
    target = tensor_power(random_density(system, seed=14), 5)
    channel = replacement_channel(target)
    assert isinstance(channel, ReplacementChannel)

    out = channel.apply(tensor_power(random_density(system, seed=15), 5))
    assert_allclose(out.matrix, target.matrix, atol=1e-12)
    assert not channel.is_incoherent_operation()
    assert channel.num_kraus == channel.support[0].size * 3 ** 5
    assert "kraus" not in vars(channel)

@pytest.mark.parametrize("coherent", [True, False])
def test_replacement_kraus_list_matches_direct_action(bipartite, coherent):
    if coherent:
        target = random_density(bipartite, seed=16)
    else:
        target = DensityOperator(bipartite, np.diag([0.1, 0.2, 0.3, 0.4]))
    channel = replacement_channel(target)
    dense = KrausChannel(channel.input_layout, channel.output_layout, channel.kraus)
    assert len(dense) == channel.num_kraus

    rho = random_density(bipartite, seed=17)
    assert_allclose(dense.apply(rho).matrix, channel.apply(rho).matrix, atol=1e-12)
    assert dense.is_incoherent_operation() == channel.is_incoherent_operation() == (not coherent)
    assert channel.is_incoherent_operation() == is_incoherent(target)

def test_replacement_rejects_wrong_input_dims(qubit):
    channel = replacement_channel(random_density(qubit, seed=18))
    with pytest.raises(ValueError):
        channel.apply(random_density(SystemLayout.single("T", 3), seed=19))

@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_incoherent_channels_keep_states_incoherent(seed):
    layout = SystemLayout.of(("A", 2, "A"), ("B", 3, "B"))
    channel = random_incoherent_channel(layout, num_kraus=3, seed=seed)
    assert channel.is_incoherent_operation()
    assert is_incoherent(channel.apply(dephase(random_density(layout, seed=seed))))

@settings(max_examples=25, deadline=None)
@given(seed=seeds, strength=st.floats(min_value=0.0, max_value=1.0))
def test_channels_contract_trace_distance(seed, strength):
    layout = SystemLayout.of(("A", 2, "A"), ("B", 2, "B"))
    rho = random_density(layout, seed=seed)
    sigma = random_density(layout, seed=seed + 1)
    before = trace_distance(rho.matrix, sigma.matrix)
    channels = (
        random_incoherent_channel(layout, num_kraus=3, seed=seed),
        compose(unitary_channel(layout, random_unitary(4, seed=seed)), dephasing_channel(layout, strength=strength)),
        twirl_channel(layout, 2),
    )
    for channel in channels:
        after = trace_distance(channel.apply(rho).matrix, channel.apply(sigma).matrix)
        assert after <= before + 1e-12
