# -*- coding: utf-8 -*-
"""
Módulo de verificação de invariantes
Registra asserções numéricas dos experimentos, calcula taxa de aprovação,
piores margens e lista de violações
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from config.config import tolerance_config

logger = logging.getLogger(__name__)

@dataclass
class InvariantCheck:
    """Resultado de uma asserção; margem negativa indica violação além da tolerância zero"""

    name: str
    passed: bool
    margin: Optional[float] = None
    trial: Optional[int] = None
    detail: str = ""

class InvariantChecker:
    """
    Classe para verificação de invariantes de um experimento
    Acumula asserções por tentativa e gera o relatório agregado
    """

    def __init__(self, config=None):
        """
        Inicializa o verificador

        Args:
            config: Configuração de tolerâncias (ToleranceConfig)
        """
        self.config = config or tolerance_config
        self.checks: List[InvariantCheck] = []

    def _record(self, check: InvariantCheck) -> bool:
        self.checks.append(check)
        if not check.passed:
            logger.warning(f"Invariante violado: {check.name} (tentativa {check.trial}) {check.detail}")
        return check.passed

    def check_upper_bound(self, name: str, value: float, bound: float, tol: float = None,
                          trial: Optional[int] = None) -> bool:
        """
        Verifica value ≤ bound + tol

        Returns:
            True se o invariante vale
        """
        tol = self.config.equality_atol if tol is None else tol
        margin = float(bound - value)
        return self._record(InvariantCheck(name, margin >= -tol, margin, trial, f"{value:.12g} ≤ {bound:.12g}"))

    def check_lower_bound(self, name: str, value: float, bound: float, tol: float = None,
                          trial: Optional[int] = None) -> bool:
        """Verifica value ≥ bound − tol"""
        tol = self.config.equality_atol if tol is None else tol
        margin = float(value - bound)
        return self._record(InvariantCheck(name, margin >= -tol, margin, trial, f"{value:.12g} ≥ {bound:.12g}"))

    def check_close(self, name: str, value: float, expected: float, tol: float = None,
                    trial: Optional[int] = None) -> bool:
        """Verifica |value − expected| ≤ tol"""
        tol = self.config.equality_atol if tol is None else tol
        margin = float(tol - abs(value - expected))
        return self._record(InvariantCheck(name, margin >= 0, margin, trial, f"{value:.12g} ≈ {expected:.12g}"))

    def check_true(self, name: str, condition: bool, trial: Optional[int] = None, detail: str = "") -> bool:
        return self._record(InvariantCheck(name, bool(condition), None, trial, detail))

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def passed_since(self, index: int) -> bool:
        """Verdadeiro se todas as asserções a partir de `index` passaram"""
        return all(check.passed for check in self.checks[index:])

    def calculate_pass_rate(self) -> float:
        """
        Fração de asserções aprovadas

        Returns:
            Taxa (1.0 sem asserções registradas)
        """
        if not self.checks:
            return 1.0
        return float(np.mean([check.passed for check in self.checks]))

    def calculate_worst_margins(self) -> Dict[str, float]:
        """Menor margem registrada por nome de invariante"""
        worst: Dict[str, float] = {}
        for check in self.checks:
            if check.margin is None:
                continue
            worst[check.name] = min(worst.get(check.name, np.inf), check.margin)
        return worst

    def get_violations(self) -> List[str]:
        """
        Identifica violações registradas

        Returns:
            Lista de mensagens, na ordem das tentativas
        """
        return [
            f"{check.name} (tentativa {check.trial}): {check.detail}"
            for check in self.checks if not check.passed
        ]

    def generate_invariant_report(self) -> Dict[str, Any]:
        """
        Gera relatório agregado das asserções

        Returns:
            Contagens, taxa de aprovação, piores margens e violações
        """
        violations = self.get_violations()
        report = {
            "total_checks": len(self.checks),
            "violations": len(violations),
            "pass_rate": self.calculate_pass_rate(),
            "worst_margins": self.calculate_worst_margins(),
            "violation_details": violations,
        }

        logger.info(f"Invariantes: {report['total_checks']} verificações, {report['violations']} violações "
                    f"(aprovação {report['pass_rate']:.2%})")
        return report
