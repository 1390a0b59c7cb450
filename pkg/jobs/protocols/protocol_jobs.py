# -*- coding: utf-8 -*-
"""
Jobs dos comandos assisted, iqsm e rates
"""

import logging
from typing import Any, Dict, List

import numpy as np

from config.config import ExperimentConfig, optimizer_config, report_config
from jobs.orchestration.experiment_job import ExperimentJob
from jobs.protocols.assisted_distillation import (
    assisted_distillation_rate,
    catalytic_dilution_plan,
    catalytic_distillation_plan,
    collaboration_upper_bound,
    product_reduction_check,
)
from jobs.protocols.state_merging import (
    iqsm_e0,
    merging_resources,
    schmidt_resource_for_rate,
    verify_merge_bound,
)
from utils.file_handlers.report_writer import FileHandler
from utils.measures.coherence import (
    MeasureResult,
    coherence_of_formation,
    distillable_coherence,
    qi_relative_entropy,
    relative_entropy_of_coherence,
)
from utils.states.density import (
    DensityOperator,
    SystemLayout,
    as_density,
    is_quantum_incoherent,
    maximally_coherent,
    random_density,
    random_pure,
)

logger = logging.getLogger(__name__)

# partes R, A e B da fusão são qubits
MERGING_PARTY_DIM = 2

def random_qi_state(layout: SystemLayout, seed: np.random.SeedSequence) -> DensityOperator:
    """Σ_i p_i σ_i^A ⊗ |i⟩⟨i|^B para layout (A, B)"""
    a, b = layout.factors
    weights_seed, *state_seeds = seed.spawn(b.dim + 1)
    weights = np.random.default_rng(weights_seed).dirichlet(np.ones(b.dim))
    a_layout = SystemLayout((a,))

    matrix = np.zeros((layout.total_dim, layout.total_dim), dtype=complex)
    for i, (weight, state_seed) in enumerate(zip(weights, state_seeds)):
        projector = np.zeros((b.dim, b.dim))
        projector[i, i] = 1.0
        matrix += weight * np.kron(random_density(a_layout, seed=state_seed).matrix, projector)
    return DensityOperator(layout, matrix)

class AssistedDistillationJob(ExperimentJob):
    """
    Job do comando assisted
    Igualdade C_d^{A|B} = C_r^{A|B} em estados puros, caracterização QI e
    redução em estados produto
    """

    job_name = "assisted"
    columns = report_config.assisted_columns

    def __init__(self, experiment: ExperimentConfig):
        super().__init__(experiment)
        d = experiment.d
        self.layout = SystemLayout.of(("A", d, "A"), ("B", d, "B"))

    def run_trial(self, trial: int, seed: np.random.SeedSequence) -> List[Dict[str, Any]]:
        psi_seed, qi_seed, a_seed, b_seed = seed.spawn(4)
        psi = random_pure(self.layout, seed=psi_seed)

        rate = assisted_distillation_rate(psi, "B")
        qi_bound = collaboration_upper_bound(psi, "B")
        self.checker.check_close("collaboration_equality", rate, qi_bound, trial=trial)

        qi_state = random_qi_state(self.layout, qi_seed)
        qi_value = collaboration_upper_bound(qi_state, "B")
        self.checker.check_true("qi_state_zero",
                                is_quantum_incoherent(qi_state, "B") and qi_value <= self.tolerances.qi_atol,
                                trial=trial, detail=f"C_r^(A|B)={qi_value:.3g}")
        self.checker.check_true("non_qi_positive",
                                (not is_quantum_incoherent(psi, "B")) == (qi_bound > self.tolerances.qi_atol),
                                trial=trial, detail=f"C_r^(A|B)={qi_bound:.3g}")

        reduction = product_reduction_check(
            random_density(SystemLayout.single("A", self.experiment.d, "A"), seed=a_seed),
            random_density(SystemLayout.single("B", self.experiment.d, "B"), seed=b_seed),
        )
        self.checker.check_close("product_reduction", reduction["qi_bound"], reduction["local"], trial=trial)

        return [{
            "trial": trial,
            "d": self.experiment.d,
            "rate": rate,
            "qi_bound": qi_bound,
            "gap": qi_bound - rate,
        }]

class StateMergingJob(ExperimentJob):
    """
    Job do comando iqsm
    Estado tripartido aleatório, recurso de Schmidt com R = E₀ e cadeia R ≥ E₀
    """

    job_name = "iqsm"
    columns = report_config.iqsm_columns

    def __init__(self, experiment: ExperimentConfig):
        super().__init__(experiment)
        dim = MERGING_PARTY_DIM
        self.layout = SystemLayout.of(("R", dim, "R"), ("A", dim, "A"), ("B", dim, "B"))
        if experiment.d != dim:
            logger.info(f"iqsm usa partes de dimensão {dim}; --d={experiment.d} ignorado")

    def run_trial(self, trial: int, seed: np.random.SeedSequence) -> List[Dict[str, Any]]:
        psi = random_pure(self.layout, seed=seed)
        analysis = iqsm_e0(psi, "R", "A", "B")
        resources = merging_resources(psi, "A", "B")

        self.checker.check_lower_bound("tradeoff_rhs", analysis.tradeoff_rhs, 0.0, trial=trial)
        self.checker.check_close("conditional_entropy", resources["conditional_entropy"],
                                 analysis.conditional_entropy, trial=trial)

        chi = schmidt_resource_for_rate(max(analysis.e0, 0.0))
        report = verify_merge_bound(psi, chi)
        for name, holds in report.checks.items():
            self.checker.check_true(name, holds, trial=trial)
        self.checker.check_close("merge_margin", report.margin, 0.0, trial=trial)

        return [{
            "trial": trial,
            "e0": analysis.e0,
            "tradeoff_rhs": analysis.tradeoff_rhs,
            "cond_entropy": analysis.conditional_entropy,
            "R": report.resource,
            "margin": report.margin,
        }]

class RatesJob(ExperimentJob):
    """
    Job do comando rates
    Medidas de coerência de um estado lido de --state-file (padrão: φ_d) e os
    planos catalíticos ótimos
    """

    job_name = "rates"
    columns = report_config.rates_columns

    def trial_seeds(self) -> List[np.random.SeedSequence]:
        return [np.random.SeedSequence(self.experiment.seed)]

    def load_state(self) -> DensityOperator:
        if self.experiment.state_file is None:
            logger.info(f"Sem --state-file; usando o estado maximamente coerente de dimensão {self.experiment.d}")
            return maximally_coherent(self.experiment.d).density()
        return as_density(FileHandler.load_state(self.experiment.state_file))

    def run_trial(self, trial: int, seed: np.random.SeedSequence) -> List[Dict[str, Any]]:
        rho = self.load_state()
        cf_kwargs = {"num_restarts": optimizer_config.num_restarts, "seed": self.experiment.seed}

        formation = coherence_of_formation(rho, **cf_kwargs)
        cost = MeasureResult("C_c", formation.value, formation.certified, formation.diagnostics)
        results = [relative_entropy_of_coherence(rho), distillable_coherence(rho), formation, cost]

        parties = rho.layout.parties
        if len(parties) >= 2:
            results.append(qi_relative_entropy(rho, parties[-1]))

        rows = [{"measure": r.name, "value": r.value, "certified": r.certified.value} for r in results]

        distillation = catalytic_distillation_plan(rho)
        dilution = catalytic_dilution_plan(rho, cost=cost)
        for plan in (distillation, dilution):
            rows.append({"measure": f"catalytic_{plan.task}_rate", "value": plan.rate,
                         "certified": plan.certified.value})

        c_r, c_d, c_f, c_c = (r.value for r in results[:4])
        self.checker.check_close("C_d_equals_C_r", c_d, c_r)
        self.checker.check_lower_bound("C_f_at_least_C_r", c_f, c_r, tol=self.tolerances.optimizer_slack)
        self.checker.check_upper_bound("C_d_at_most_C_c", c_d, c_c, tol=self.tolerances.optimizer_slack)
        return rows
