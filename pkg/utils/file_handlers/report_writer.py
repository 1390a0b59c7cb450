# -*- coding: utf-8 -*-
"""
Utilitários de relatórios e arquivos de estado
Emissão de ExperimentReport em CSV/JSON e leitura de estados serializados
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from config.config import report_config
from utils.states.density import State, state_from_json, state_to_json

logger = logging.getLogger(__name__)

def round_significant(value: Any, digits: int = 12) -> Any:
    """Arredonda floats (recursivamente em dicts/listas) para `digits` algarismos significativos"""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return value
        return float(f"{value:.{digits}g}")
    if isinstance(value, dict):
        return {key: round_significant(v, digits) for key, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_significant(v, digits) for v in value]
    if hasattr(value, "item"):
        return round_significant(value.item(), digits)
    return value

@dataclass
class ExperimentReport:
    """
    Registro estruturado de uma varredura: configuração resolvida, linhas por
    tentativa e resumo agregado (contagens de aprovação e piores margens)
    """

    command: str
    config: Dict[str, Any]
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    status: str = "success"
    error_message: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "success" and self.summary.get("violations", 0) == 0

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(round_significant(self.rows), columns=self.columns)

    def to_json_dict(self) -> Dict[str, Any]:
        summary = dict(self.summary)
        summary["status"] = self.status
        if self.error_message:
            summary["error_message"] = self.error_message
        return round_significant({
            "config": self.config,
            "summary": summary,
            "rows": [{column: row.get(column) for column in self.columns} for row in self.rows]
        })

class ReportWriter:
    """
    Classe para emissão de relatórios de experimentos
    """

    def __init__(self, config=None):
        """
        Inicializa o emissor

        Args:
            config: Configuração de relatórios (ReportConfig)
        """
        self.config = config or report_config

    def default_path(self, report: ExperimentReport, fmt: str) -> Path:
        return Path(self.config.output_path) / f"{report.command}.{fmt}"

    def save_csv(self, report: ExperimentReport, file_path: Path) -> Path:
        """
        Salva as linhas do relatório em CSV com cabeçalho

        Args:
            report: Relatório do experimento
            file_path: Caminho do arquivo

        Returns:
            Caminho salvo
        """
        FileHandler.ensure_directory(file_path.parent)
        report.to_frame().to_csv(
            file_path,
            index=False,
            float_format=self.config.float_format,
            lineterminator="\n",
            encoding="utf-8"
        )
        logger.info(f"CSV salvo: {file_path} ({len(report.rows)} linhas)")
        return file_path

    def save_json(self, report: ExperimentReport, file_path: Path) -> Path:
        """Salva {config, summary, rows} em JSON"""
        FileHandler.ensure_directory(file_path.parent)
        with open(file_path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(report.to_json_dict(), f, indent=2, ensure_ascii=False)
            f.write("\n")
        logger.info(f"JSON salvo: {file_path}")
        return file_path

    def save(self, report: ExperimentReport, out: Optional[Path] = None, fmt: str = "csv") -> Path:
        """
        Salva o relatório no formato pedido

        Raises:
            ValueError: formato desconhecido
        """
        path = Path(out) if out is not None else self.default_path(report, fmt)
        if fmt == "csv":
            return self.save_csv(report, path)
        if fmt == "json":
            return self.save_json(report, path)
        raise ValueError(f"Formato de relatório desconhecido: {fmt!r}")

class FileHandler:
    """
    Classe para manipulação de arquivos de estado
    """

    @staticmethod
    def ensure_directory(path: Path) -> None:
        path.mkdir(parents=True, exist_ok=True)

    @staticmethod
    def load_state(file_path: Path) -> State:
        """
        Lê um estado serializado em JSON

        Raises:
            FileNotFoundError: arquivo inexistente
            ValueError: JSON malformado ou estado inválido
        """
        file_path = Path(file_path)
        if not file_path.exists():
            raise FileNotFoundError(f"Arquivo de estado não encontrado: {file_path}")

        try:
            with open(file_path, "r", encoding="utf-8") as f:
                payload = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"JSON inválido em {file_path}: {e}") from e

        state = state_from_json(payload)
        logger.info(f"Estado carregado: {file_path} (fatores {list(state.layout.labels)})")
        return state

    @staticmethod
    def save_state(state: State, file_path: Path) -> Path:
        file_path = Path(file_path)
        FileHandler.ensure_directory(file_path.parent)
        with open(file_path, "w", encoding="utf-8") as f:
            json.dump(state_to_json(state), f)
        return file_path
