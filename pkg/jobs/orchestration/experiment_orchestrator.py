# -*- coding: utf-8 -*-
"""
Experiment Orchestrator - Execução dos comandos da CLI
Despacha o comando para o job correspondente, salva o relatório e traduz o
resultado em código de saída
"""

import logging
from pathlib import Path
from typing import Dict, Optional, Tuple, Type

from config.config import ExperimentConfig, report_config
from jobs.catalysis.catalysis_demo_job import CatalysisDemoJob
from jobs.catalysis.monotonicity_job import MonotonicitySweepJob
from jobs.orchestration.experiment_job import ExperimentJob
from jobs.protocols.protocol_jobs import AssistedDistillationJob, RatesJob, StateMergingJob
from utils.file_handlers.report_writer import ExperimentReport, ReportWriter

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2

JOBS: Dict[str, Type[ExperimentJob]] = {
    "catalysis-demo": CatalysisDemoJob,
    "monotonicity-sweep": MonotonicitySweepJob,
    "rates": RatesJob,
    "assisted": AssistedDistillationJob,
    "iqsm": StateMergingJob,
}

def exit_code_for(report: ExperimentReport) -> int:
    """0 se todos os invariantes passaram, 2 com violações, 1 em erro do job"""
    if report.status != "success":
        return EXIT_ERROR
    return EXIT_SUCCESS if report.passed else EXIT_VIOLATION

class ExperimentOrchestrator:
    """Orquestrador dos experimentos disparados pela CLI"""

    def __init__(self, writer: Optional[ReportWriter] = None):
        self.writer = writer or ReportWriter(report_config)

    def run(self, experiment: ExperimentConfig) -> Tuple[ExperimentReport, int]:
        """
        Executa o comando configurado

        Returns:
            (relatório, código de saída)
        """
        logger.info(f"🚀 INICIANDO EXPERIMENTO {experiment.command}")
        job = JOBS[experiment.command](experiment)
        report = job.execute()

        output: Optional[Path] = None
        if report.status == "success":
            output = self.writer.save(report, experiment.out, experiment.format)
        else:
            logger.error(f"❌ Falha no experimento: {report.error_message}")

        code = exit_code_for(report)
        self._print_execution_summary(report, output, code)
        return report, code

    def _print_execution_summary(self, report: ExperimentReport, output: Optional[Path], code: int):
        """Imprime resumo da execução"""
        summary = report.summary

        print("=" * 60)
        print(f"RESUMO: {report.command}")
        print("=" * 60)
        print(f"Status: {report.status.upper()}")

        if report.status != "success":
            print(f"Erro: {report.error_message}")
        else:
            print(f"Tentativas: {summary.get('trials', 0)}")
            print(f"Asserções: {summary.get('total_checks', 0)}")
            print(f"Violações: {summary.get('violations', 0)}")
            print(f"Taxa de aprovação: {summary.get('pass_rate', 1.0):.2%}")

            for detail in summary.get("violation_details", [])[:10]:
                print(f"   • {detail}")

            if output is not None:
                print(f"Relatório: {output}")

        print(f"Código de saída: {code}")
        print("=" * 60)
