# -*- coding: utf-8 -*-
"""Testes de destilação assistida, fusão incoerente e jobs de protocolo"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from config.config import ExperimentConfig
from jobs.protocols.assisted_distillation import (
    assisted_distillation,
    assisted_distillation_rate,
    catalytic_dilution_plan,
    catalytic_distillation_plan,
    collaboration_upper_bound,
    product_reduction_check,
)
from jobs.protocols.protocol_jobs import AssistedDistillationJob, RatesJob, StateMergingJob, random_qi_state
from jobs.protocols.state_merging import (
    conditional_entropy,
    iqsm_e0,
    merging_resources,
    schmidt_resource_for_rate,
    verify_merge_bound,
)
from utils.file_handlers.report_writer import FileHandler
from utils.measures.coherence import Certification, entanglement_entropy, relative_entropy_of_coherence
from utils.states.density import (
    DensityOperator,
    PureState,
    SystemLayout,
    basis_state,
    is_quantum_incoherent,
    maximally_coherent,
    random_density,
    random_pure,
    schmidt_state,
    tensor,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

H_09 = 0.4689955935892812

@pytest.fixture
def plus_zero():
    """|+⟩^A|0⟩^B"""
    return tensor(maximally_coherent(2, label="A", party="A"), basis_state(SystemLayout.single("B", 2, "B"), [0]))

@pytest.fixture
def bell_with_reference(phi_plus):
    """|φ⁺⟩^{AB}|0⟩^R"""
    return tensor(phi_plus, basis_state(SystemLayout.single("R", 2, "R"), [0]))

def test_assisted_rate_examples(phi_plus, plus_zero):
    assert assisted_distillation_rate(phi_plus, "B") == pytest.approx(1.0)
    assert assisted_distillation_rate(plus_zero, "B") == pytest.approx(0.0, abs=1e-12)

    psi_b = tensor(random_pure(SystemLayout.single("A", 2, "A"), seed=1), maximally_coherent(2, label="B", party="B"))
    assert assisted_distillation_rate(psi_b, "B") == pytest.approx(1.0)

def test_assisted_rate_rejects_mixed(bipartite):
    with pytest.raises(ValueError):
        assisted_distillation_rate(DensityOperator(bipartite, np.eye(4) / 4), "B")

def test_mixed_assisted_distillation_is_flagged(bipartite, phi_plus):
    mixed = assisted_distillation(random_density(bipartite, seed=2), "B")
    assert mixed.certified is Certification.UPPER_BOUND
    pure = assisted_distillation(phi_plus, "B")
    assert pure.certified is Certification.EXACT
    assert pure.value == pytest.approx(1.0)

def test_collaboration_bound_on_qi_states(bipartite):
    for k in range(5):
        state = random_qi_state(bipartite, np.random.SeedSequence(k))
        assert is_quantum_incoherent(state, "B")
        assert collaboration_upper_bound(state, "B") <= 1e-9

@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_collaboration_equality_on_pure_states(seed):
    layout = SystemLayout.of(("A", 2, "A"), ("B", 3, "B"))
    psi = random_pure(layout, seed=seed)
    assert assisted_distillation_rate(psi, "B") == pytest.approx(collaboration_upper_bound(psi, "B"), abs=1e-9)

def test_product_reduction():
    report = product_reduction_check(
        random_density(SystemLayout.single("A", 2, "A"), seed=3),
        random_density(SystemLayout.single("B", 3, "B"), seed=4),
    )
    assert report["gap"] == pytest.approx(0.0, abs=1e-9)

def test_catalytic_plans(plus):
    distillation = catalytic_distillation_plan(plus)
    assert distillation.rate == pytest.approx(1.0)
    assert relative_entropy_of_coherence(distillation.resource).value == pytest.approx(1.0, abs=1e-9)

    rho = random_density(SystemLayout.single("S", 2), seed=5)
    dilution = catalytic_dilution_plan(rho)
    assert dilution.certified is Certification.EXACT
    assert relative_entropy_of_coherence(dilution.resource).value == pytest.approx(dilution.rate, abs=1e-9)
    assert dilution.to_dict()["task"] == "dilution"

def test_conditional_entropy_examples(bell_with_reference):
    assert conditional_entropy(bell_with_reference, "A", "B") == pytest.approx(-1.0)
    product = basis_state(SystemLayout.of(("A", 2, "A"), ("B", 2, "B"), ("R", 2, "R")), [0, 0, 0])
    assert conditional_entropy(product, "A", "B") == pytest.approx(0.0, abs=1e-12)

def test_conditional_entropy_with_trivial_b():
    layout = SystemLayout.of(("A", 2, "A"), ("B", 1, "B"), ("R", 2, "R"))
    psi = PureState(layout, np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0))
    assert conditional_entropy(psi, "A", "B") == pytest.approx(1.0)

def test_merging_resources(bell_with_reference):
    resources = merging_resources(bell_with_reference, "A", "B")
    assert resources["entanglement_consumed"] == 0.0
    assert resources["entanglement_gained"] == pytest.approx(1.0)

def test_e0_examples(plus_zero, phi_plus):
    analysis = iqsm_e0(plus_zero, None, "A", "B")
    assert analysis.e0 == pytest.approx(1.0)
    assert analysis.tradeoff_rhs >= -1e-9

    assert iqsm_e0(phi_plus, None, "A", "B").e0 == pytest.approx(0.0, abs=1e-12)

    incoherent = basis_state(SystemLayout.of(("A", 2, "A"), ("B", 2, "B")), [1, 0])
    assert iqsm_e0(incoherent, None, "A", "B").e0 == pytest.approx(0.0, abs=1e-12)

def test_merge_bound_matched_pairs(plus_zero):
    report = verify_merge_bound(plus_zero, schmidt_state([0.5, 0.5]), party_r=None)
    assert report.margin == pytest.approx(0.0, abs=1e-9)
    assert report.sufficient and report.chain_holds

    incoherent = basis_state(SystemLayout.of(("A", 2, "A"), ("B", 2, "B")), [0, 1])
    report = verify_merge_bound(incoherent, schmidt_state([1.0, 0.0]), party_r=None)
    assert report.margin == pytest.approx(0.0, abs=1e-9)

def test_merge_bound_insufficient_resource(plus_zero):
    report = verify_merge_bound(plus_zero, schmidt_state([0.9, 0.1]), party_r=None)
    assert report.resource == pytest.approx(H_09, abs=1e-9)
    assert not report.sufficient
    assert report.chain_holds

def test_merge_bound_rejects_non_schmidt(plus_zero):
    layout = SystemLayout.of(("A~", 2, "A"), ("B~", 2, "B"))
    with pytest.raises(ValueError):
        verify_merge_bound(plus_zero, PureState(layout, np.full(4, 0.5)), party_r=None)

@pytest.mark.parametrize("rate", [0.0, 0.5, 1.0, 1.8])
def test_schmidt_resource_for_rate(rate):
    chi = schmidt_resource_for_rate(rate)
    assert entanglement_entropy(chi, "A~") == pytest.approx(rate, abs=1e-9)

@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_tradeoff_and_chain_on_random_states(seed):
    layout = SystemLayout.of(("R", 2, "R"), ("A", 2, "A"), ("B", 2, "B"))
    psi = random_pure(layout, seed=seed)
    analysis = iqsm_e0(psi, "R", "A", "B")
    assert analysis.tradeoff_rhs >= -1e-9
    report = verify_merge_bound(psi, schmidt_resource_for_rate(analysis.e0))
    assert report.chain_holds
    assert report.margin == pytest.approx(0.0, abs=1e-9)

def test_assisted_job():
    report = AssistedDistillationJob(ExperimentConfig(command="assisted", d=2, trials=4, seed=3)).execute()
    assert report.passed, report.summary["violation_details"]
    assert len(report.rows) == 4
    for row in report.rows:
        assert row["gap"] == pytest.approx(0.0, abs=1e-9)

def test_iqsm_job():
    report = StateMergingJob(ExperimentConfig(command="iqsm", trials=3, seed=4)).execute()
    assert report.passed, report.summary["violation_details"]
    assert all(row["pass"] for row in report.rows)

def test_rates_job_incoherent_state(tmp_path):
    state_file = FileHandler.save_state(
        DensityOperator(SystemLayout.single("S", 3), np.diag([0.2, 0.3, 0.5])), tmp_path / "s.json"
    )
    report = RatesJob(ExperimentConfig(command="rates", state_file=state_file)).execute()
    assert report.passed
    assert [row["measure"] for row in report.rows] == [
        "C_r", "C_d", "C_f", "C_c", "catalytic_distillation_rate", "catalytic_dilution_rate"
    ]
    for row in report.rows:
        assert row["value"] == pytest.approx(0.0, abs=1e-12)

def test_rates_job_bipartite_default_party(tmp_path, phi_plus):
    state_file = FileHandler.save_state(phi_plus, tmp_path / "bell.json")
    report = RatesJob(ExperimentConfig(command="rates", state_file=state_file)).execute()
    values = {row["measure"]: row["value"] for row in report.rows}
    assert values["C_r^{A|B}"] == pytest.approx(1.0)
    assert values["C_r"] == pytest.approx(1.0)

def test_rates_job_missing_file(tmp_path):
    report = RatesJob(ExperimentConfig(command="rates", state_file=tmp_path / "missing.json")).execute()
    assert report.status == "error"
    assert not report.passed

@pytest.mark.slow
def test_assisted_job_qi_characterization_full_scale():
    # cada tentativa classifica um estado QI e um estado puro aleatório
    report = AssistedDistillationJob(ExperimentConfig(command="assisted", d=2, trials=200, seed=17)).execute()
    assert report.passed, report.summary["violation_details"]
    assert len(report.rows) == 200
    assert all(row["qi_bound"] > 1e-9 for row in report.rows)
