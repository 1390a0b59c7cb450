# -*- coding: utf-8 -*-
"""
Configurações centralizadas do simulador cohcat
Tolerâncias numéricas, otimizador, protocolo catalítico e relatórios
"""

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, model_validator

# Diretório base do projeto
BASE_DIR = Path(__file__).parent.parent
REPORTS_PATH = BASE_DIR / "reports"

load_dotenv(BASE_DIR / ".env")

SEED_ENV_VAR = "COHCAT_SEED"

@dataclass(frozen=True)
class ToleranceConfig:
    """Escada de tolerâncias usada em todo o kernel numérico"""

    # Simetria elemento a elemento de matrizes Hermitianas
    hermitian_atol: float = 1e-12

    # Folga para autovalores negativos (PSD) e para o traço unitário
    psd_slack: float = 1e-10
    trace_atol: float = 1e-10

    # Reconstrução da decomposição espectral
    reconstruction_rtol: float = 1e-10

    # Autovalores abaixo disso viram zero nas entropias
    eigen_clamp: float = 1e-12

    # Asserções de igualdade entre quantidades
    equality_atol: float = 1e-9

    # Critério de uma entrada por coluna nos operadores de Kraus
    kraus_entry_atol: float = 1e-12

    # Elementos fora da diagonal considerados nulos
    incoherence_atol: float = 1e-10

    # Predicado quântico-incoerente (distância ao ponto fixo)
    qi_atol: float = 1e-9

    # Folga para valores vindos do otimizador de C_f
    optimizer_slack: float = 1e-6

@dataclass(frozen=True)
class OptimizerConfig:
    """Configurações do otimizador da coerência de formação"""

    num_restarts: int = 32
    refinement_tol: float = 1e-8
    max_refinement_sweeps: int = 25
    bfgs_gtol: float = 1e-9
    base_seed: int = 20160321

    # Reinícios por avaliação de C_f nas varreduras de protocolo
    sweep_restarts: int = 8

@dataclass(frozen=True)
class ProtocolConfig:
    """Limites de escala de bancada do protocolo catalítico"""

    max_copies: int = 6
    max_system_dim: int = 4

    # Caminho denso só é montado abaixo desta dimensão conjunta
    dense_check_max_dim: int = 512

    # Teto de entradas complexas das listas de Kraus do caminho denso (~134 MB)
    dense_check_max_entries: int = 2 ** 23

    # Rótulo e parte do registrador auxiliar K
    register_label: str = "K"

@dataclass
class ReportConfig:
    """Configurações de emissão de relatórios"""

    output_path: Path = REPORTS_PATH
    float_format: str = "%.12g"

    # Colunas por esquema de relatório
    catalysis_columns: List[str] = None
    monotonicity_columns: List[str] = None
    iqsm_columns: List[str] = None
    assisted_columns: List[str] = None
    rates_columns: List[str] = None

    def __post_init__(self):
        """Definir colunas esperadas"""
        if self.catalysis_columns is None:
            self.catalysis_columns = [
                "trial", "n", "d", "eps_in", "dist_out", "ratio",
                "cr_in", "cr_out", "cf_in", "cf_out", "pass"
            ]

        if self.monotonicity_columns is None:
            self.monotonicity_columns = ["trial", "kind"] + self.catalysis_columns[1:]

        if self.iqsm_columns is None:
            self.iqsm_columns = [
                "trial", "e0", "tradeoff_rhs", "cond_entropy", "R", "margin", "pass"
            ]

        if self.assisted_columns is None:
            self.assisted_columns = ["trial", "d", "rate", "qi_bound", "gap", "pass"]

        if self.rates_columns is None:
            self.rates_columns = ["measure", "value", "certified"]

# Instâncias globais das configurações
tolerance_config = ToleranceConfig()
optimizer_config = OptimizerConfig()
protocol_config = ProtocolConfig()
report_config = ReportConfig()

def get_config(config_type: str):
    """
    Retorna configuração específica

    Args:
        config_type: Tipo de configuração ('tolerance', 'optimizer', 'protocol', 'report')

    Returns:
        Instância da configuração solicitada

    Raises:
        ValueError: tipo de configuração desconhecido
    """
    configs = {
        'tolerance': tolerance_config,
        'optimizer': optimizer_config,
        'protocol': protocol_config,
        'report': report_config,
    }

    config = configs.get(config_type.lower())
    if config is None:
        raise ValueError(f"Tipo de configuração desconhecido: {config_type!r} (esperado um de {sorted(configs)})")
    return config

Command = Literal["catalysis-demo", "monotonicity-sweep", "rates", "assisted", "iqsm"]

class ExperimentConfig(BaseModel):
    """Configuração resolvida de um experimento disparado pela CLI"""

    command: Command
    d: int = Field(2, ge=2)
    n: int = Field(3, ge=2, le=6)
    trials: int = Field(1, ge=1)
    seed: int = 0
    epsilon: float = Field(0.0, ge=0.0)
    state_file: Optional[Path] = None
    out: Optional[Path] = None
    format: Literal["csv", "json"] = "csv"

    @model_validator(mode="after")
    def _check_desk_scale(self) -> "ExperimentConfig":
        if self.d > protocol_config.max_system_dim and self.command in ("catalysis-demo", "monotonicity-sweep"):
            raise ValueError(
                f"d={self.d} excede o limite de bancada ({protocol_config.max_system_dim}) do protocolo catalítico"
            )
        return self

    def resolved(self) -> Dict[str, Any]:
        """Dicionário serializável da configuração (embutido nos relatórios JSON)"""
        return json.loads(self.model_dump_json())

def load_experiment_config(flags: Dict[str, Any], config_file: Optional[Path] = None) -> ExperimentConfig:
    """
    Resolve a configuração do experimento

    Precedência: flags > arquivo JSON > variável COHCAT_SEED > padrões.

    Args:
        flags: Valores vindos da linha de comando (None = não informado)
        config_file: Arquivo JSON opcional com as mesmas chaves

    Returns:
        ExperimentConfig validada

    Raises:
        ValueError: se a configuração violar os invariantes
    """
    values: Dict[str, Any] = {}

    env_seed = os.getenv(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            values["seed"] = int(env_seed)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} inválida: {env_seed!r}")

    if config_file is not None:
        if not Path(config_file).exists():
            raise FileNotFoundError(f"Arquivo de configuração não encontrado: {config_file}")
        with open(config_file, "r", encoding="utf-8") as f:
            values.update(json.load(f))

    values.update({key: value for key, value in flags.items() if value is not None})

    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        raise ValueError(f"Configuração de experimento inválida: {e}") from e

# Configurações de logging
LOGGING_CONFIG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'standard': {
            'format': '%(asctime)s [%(levelname)s] %(name)s: %(message)s'
        },
        'detailed': {
            'format': '%(asctime)s [%(levelname)s] %(name)s [%(filename)s:%(lineno)d]: %(message)s'
        },
    },
    'handlers': {
        'default': {
            'level': 'DEBUG',
            'formatter': 'standard',
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
        },
    },
    'loggers': {
        '': {
            'handlers': ['default'],
            'level': 'INFO',
            'propagate': False
        }
    }
}
