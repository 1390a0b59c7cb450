# -*- coding: utf-8 -*-
"""
Base dos jobs de experimento
Laço de tentativas com sementes derivadas, registro de invariantes e
montagem do ExperimentReport
"""

import logging
import time
from typing import Any, Dict, List

import numpy as np
from tqdm import tqdm

from config.config import ExperimentConfig, tolerance_config
from utils.data_quality.invariant_checker import InvariantChecker
from utils.file_handlers.report_writer import ExperimentReport

logger = logging.getLogger(__name__)

class ExperimentJob:
    """
    Job de experimento: subclasses implementam run_trial

    Cada tentativa recebe sua própria SeedSequence, derivada da semente do
    experimento por spawn, e as linhas saem na ordem do índice da tentativa.
    """

    job_name = "experiment"
    columns: List[str] = []

    def __init__(self, experiment: ExperimentConfig):
        """Inicializa o job com a configuração resolvida do experimento"""
        self.experiment = experiment
        self.tolerances = tolerance_config
        self.checker = InvariantChecker(tolerance_config)

    def trial_seeds(self) -> List[np.random.SeedSequence]:
        return np.random.SeedSequence(self.experiment.seed).spawn(self.experiment.trials)

    def run_trial(self, trial: int, seed: np.random.SeedSequence) -> List[Dict[str, Any]]:
        raise NotImplementedError

    def finalize(self) -> Dict[str, Any]:
        """Verificações finais fora do laço; devolve campos extras do resumo"""
        return {}

    def execute(self) -> ExperimentReport:
        """
        Executa todas as tentativas

        Returns:
            Relatório do experimento (status 'error' se uma exceção escapar)
        """
        execution_start = time.perf_counter()
        logger.info(f"=== INICIANDO JOB {self.job_name.upper()} ===")
        config = self.experiment.resolved()

        try:
            rows: List[Dict[str, Any]] = []
            for trial, seed in enumerate(tqdm(self.trial_seeds(), desc=self.job_name, disable=None)):
                first_check = len(self.checker.checks)
                trial_rows = self.run_trial(trial, seed)
                if "pass" in self.columns:
                    passed = self.checker.passed_since(first_check)
                    for row in trial_rows:
                        row["pass"] = passed
                rows.extend(trial_rows)

            extra = self.finalize()
            invariant_report = self.checker.generate_invariant_report()

            summary = {
                "trials": len(self.trial_seeds()),
                "total_checks": invariant_report["total_checks"],
                "violations": invariant_report["violations"],
                "pass_rate": invariant_report["pass_rate"],
                "worst_margins": invariant_report["worst_margins"],
                "violation_details": invariant_report["violation_details"],
            }
            summary.update(extra)

            execution_time = time.perf_counter() - execution_start
            logger.info(f"=== JOB {self.job_name.upper()} CONCLUÍDO ({execution_time:.1f}s) ===")
            logger.info(f"Tentativas: {summary['trials']}, violações: {summary['violations']}")

            return ExperimentReport(self.experiment.command, config, list(self.columns), rows, summary)

        except Exception as e:
            execution_time = time.perf_counter() - execution_start
            logger.error(f"=== JOB {self.job_name.upper()} FALHOU ({execution_time:.1f}s) ===")
            logger.error(f"Erro: {str(e)}")

            return ExperimentReport(
                self.experiment.command, config, list(self.columns),
                status="error", error_message=str(e)
            )
