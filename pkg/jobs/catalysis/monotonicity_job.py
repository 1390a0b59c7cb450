# -*- coding: utf-8 -*-
"""
Job de varredura de monotonicidade sob IO catalítica
Tentativas com canais incoerentes certificados, com canais locais LQICC em
estados bipartidos e com o oráculo de alvo exato para pares puros viáveis
"""

import logging
from typing import Any, Dict, List

import numpy as np

from config.config import ExperimentConfig, report_config
from jobs.catalysis.catalysis_demo_job import measure_pair, record_protocol_checks
from jobs.catalysis.catalytic_protocol import build_catalyst, catalytic_pure_feasible, run_protocol
from jobs.orchestration.experiment_job import ExperimentJob
from utils.channels.kraus import (
    KrausChannel,
    apply,
    random_incoherent_channel,
    random_unitary,
    replacement_channel,
    tensor_channels,
    unitary_channel,
)
from utils.file_handlers.report_writer import ExperimentReport
from utils.measures.coherence import qi_relative_entropy
from utils.states.density import (
    SystemLayout,
    partial_trace_state,
    random_density,
    random_pure,
    tensor_power,
)

logger = logging.getLogger(__name__)

TRIAL_KINDS = ("io", "bipartite", "oracle")

# cópias por tentativa bipartida (dimensão 4 por cópia)
MAX_BIPARTITE_COPIES = 3

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)

def certification_gate(channel: KrausChannel) -> bool:
    """Só canais certificados incoerentes seguem para a asserção de monotonicidade"""
    certified = channel.is_incoherent_operation()
    if not certified:
        logger.info(f"Canal {channel.name!r} rejeitado pela certificação de incoerência")
    return certified

class MonotonicitySweepJob(ExperimentJob):
    """
    Job do comando monotonicity-sweep
    A tentativa i usa o tipo TRIAL_KINDS[i % 3] e n = 2 + i mod (n_max − 1)
    """

    job_name = "monotonicity_sweep"
    columns = report_config.monotonicity_columns

    def __init__(self, experiment: ExperimentConfig):
        super().__init__(experiment)
        self.system = SystemLayout.single("S", experiment.d)

    def copies_for(self, trial: int) -> int:
        return 2 + trial % (self.experiment.n - 1)

    def _row(self, trial: int, kind: str, n: int, d: int, trace) -> Dict[str, Any]:
        return {
            "trial": trial,
            "kind": kind,
            "n": n,
            "d": d,
            "eps_in": trace.gamma_distance,
            "dist_out": trace.output_distance,
            "ratio": trace.ratio,
        }

    def run_io_trial(self, trial: int, seed: np.random.SeedSequence) -> Dict[str, Any]:
        """Λ incoerente aleatório em S^⊗n; Γ = Λ(ρ^⊗n) simetrizado, σ = Γ_1"""
        n = self.copies_for(trial)
        rho_seed, channel_seed = seed.spawn(2)
        rho = random_density(self.system, seed=rho_seed)
        copies = self.system.replicate(n)

        channel = random_incoherent_channel(copies, num_kraus=3, seed=channel_seed)
        if not self.checker.check_true("certification", certification_gate(channel), trial=trial):
            return {"trial": trial, "kind": "io", "n": n, "d": self.experiment.d}

        gamma = apply(channel, tensor_power(rho, n))
        tau = build_catalyst(rho, gamma, n)
        sigma = partial_trace_state(tau.gamma, copies.labels[0])

        trace = run_protocol(rho, tau, channel, target=sigma)
        record_protocol_checks(self.checker, trace, trial)
        self.checker.check_upper_bound("output_marginal", trace.output_marginal_distance, 0.0,
                                       tol=self.tolerances.trace_atol, trial=trial)

        values = measure_pair(rho, trace.output)
        self.checker.check_lower_bound("C_r_monotone", values["cr_in"], values["cr_out"], trial=trial)
        self.checker.check_lower_bound("C_f_monotone", values["cf_in"], values["cf_out"],
                                       tol=self.tolerances.optimizer_slack, trial=trial)

        row = self._row(trial, "io", n, self.experiment.d, trace)
        row.update(values)
        return row

    def run_bipartite_trial(self, trial: int, seed: np.random.SeedSequence) -> Dict[str, Any]:
        """Λ = (U_A ⊗ IO_B)^⊗n por cópia, verificando C_r^{A|B}"""
        n = min(self.copies_for(trial), MAX_BIPARTITE_COPIES)
        rho_seed, unitary_seed, channel_seed = seed.spawn(3)
        layout = SystemLayout.of(("A", 2, "A"), ("B", 2, "B"))
        rho = random_density(layout, seed=rho_seed)

        unitary = random_unitary(2, seed=unitary_seed)
        local_b = random_incoherent_channel(SystemLayout.single("B", 2, "B"), num_kraus=2, seed=channel_seed)
        if not self.checker.check_true("certification", certification_gate(local_b), trial=trial):
            return {"trial": trial, "kind": "bipartite", "n": n, "d": layout.total_dim}

        local = []
        for k in range(1, n + 1):
            a = SystemLayout.single(f"A#{k}", 2, "A")
            b = SystemLayout.single(f"B#{k}", 2, "B")
            local.append(tensor_channels(
                unitary_channel(a, unitary),
                KrausChannel(b, b, local_b.kraus, name="io_B"),
            ))
        channel = tensor_channels(*local)

        gamma = apply(channel, tensor_power(rho, n))
        tau = build_catalyst(rho, gamma, n)
        sigma = partial_trace_state(tau.gamma, ["A#1", "B#1"])

        trace = run_protocol(rho, tau, channel, target=sigma)
        record_protocol_checks(self.checker, trace, trial)

        qi_in = qi_relative_entropy(rho, "B").value
        qi_out = qi_relative_entropy(trace.output, "B").value
        self.checker.check_lower_bound("C_r^{A|B}_monotone", qi_in, qi_out, trial=trial)

        row = self._row(trial, "bipartite", n, layout.total_dim, trace)
        row.update({"cr_in": qi_in, "cr_out": qi_out, "cf_in": None, "cf_out": None})
        return row

    def run_oracle_trial(self, trial: int, seed: np.random.SeedSequence) -> Dict[str, Any]:
        """Par puro viável ψ → φ executado com o oráculo de substituição para φ^⊗n"""
        n = self.copies_for(trial)
        psi_seed, phi_seed = seed.spawn(2)
        psi = random_pure(self.system, seed=psi_seed)
        phi = random_pure(self.system, seed=phi_seed)
        if not catalytic_pure_feasible(psi, phi):
            psi, phi = phi, psi
        self.checker.check_true("pure_feasible", catalytic_pure_feasible(psi, phi), trial=trial)

        target = tensor_power(phi, n).density()
        channel = replacement_channel(target)
        tau = build_catalyst(psi.density(), target, n)
        trace = run_protocol(psi.density(), tau, channel, target=phi.density())
        record_protocol_checks(self.checker, trace, trial)

        values = measure_pair(psi.density(), trace.output)
        self.checker.check_lower_bound("C_r_monotone", values["cr_in"], values["cr_out"], trial=trial)
        self.checker.check_lower_bound("C_f_monotone", values["cf_in"], values["cf_out"],
                                       tol=self.tolerances.optimizer_slack, trial=trial)

        row = self._row(trial, "oracle", n, self.experiment.d, trace)
        row.update(values)
        return row

    def run_trial(self, trial: int, seed: np.random.SeedSequence) -> List[Dict[str, Any]]:
        kind = TRIAL_KINDS[trial % len(TRIAL_KINDS)]
        runner = {
            "io": self.run_io_trial,
            "bipartite": self.run_bipartite_trial,
            "oracle": self.run_oracle_trial,
        }[kind]
        return [runner(trial, seed)]

    def finalize(self) -> Dict[str, Any]:
        """Λ de Hadamard deve ser barrado antes de qualquer asserção de monotonicidade"""
        copies = SystemLayout.single("S", 2).replicate(2)
        adversarial = unitary_channel(copies, np.kron(HADAMARD, HADAMARD), name="hadamard")
        rejected = not certification_gate(adversarial)
        self.checker.check_true("adversarial_rejected", rejected, detail="Hadamard certificado como incoerente")
        return {"adversarial_rejected": rejected}

def monotonicity_harness(trials: int, seed: int, d: int = 2, n: int = 3) -> ExperimentReport:
    """Executa a varredura de monotonicidade fora da CLI"""
    experiment = ExperimentConfig(command="monotonicity-sweep", trials=trials, seed=seed, d=d, n=n)
    return MonotonicitySweepJob(experiment).execute()
