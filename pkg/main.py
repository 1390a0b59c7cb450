#!/usr/bin/env python3
"""
Script Principal - cohcat
Simulador de catálise de coerência quântica

Comandos: catalysis-demo, monotonicity-sweep, rates, assisted, iqsm.
Códigos de saída: 0 (invariantes ok), 2 (violação), 1 (erro de uso ou do job).
"""

import argparse
import logging
import logging.config
import os
import sys
from pathlib import Path
from typing import List, Optional

# Adicionar path do projeto
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.append(project_root)

from config.config import LOGGING_CONFIG, load_experiment_config  # noqa: E402

COMMANDS = {
    "catalysis-demo": "Executa o protocolo catalítico com Γ a distância ε de σ^⊗n",
    "monotonicity-sweep": "Varredura de monotonicidade sob IO catalítica",
    "rates": "Medidas de coerência e taxas catalíticas de um estado",
    "assisted": "Destilação assistida: igualdade C_d^{A|B} = C_r^{A|B} em estados puros",
    "iqsm": "Fusão incoerente de estados: E₀, compromisso e cadeia R ≥ E₀",
}

class UsageErrorParser(argparse.ArgumentParser):
    """Parser cujos erros de uso saem com código 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: erro: {message}\n")

def build_parser() -> argparse.ArgumentParser:
    parser = UsageErrorParser(prog="cohcat", description="Simulador de catálise de coerência quântica")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=UsageErrorParser)

    for command, help_text in COMMANDS.items():
        sub = subparsers.add_parser(command, help=help_text, description=help_text)
        sub.add_argument("--d", type=int, help="Dimensão do sistema (padrão 2)")
        sub.add_argument("--n", type=int, help="Número de cópias (2..6, padrão 3)")
        sub.add_argument("--trials", type=int, help="Número de tentativas (padrão 1)")
        sub.add_argument("--seed", type=int, help="Semente (fallback: COHCAT_SEED)")
        sub.add_argument("--epsilon", type=float, help="Distância D(Γ, σ^⊗n) (padrão 0)")
        sub.add_argument("--state-file", type=Path, help="Estado em JSON para o comando rates")
        sub.add_argument("--out", type=Path, help="Arquivo de saída do relatório")
        sub.add_argument("--format", choices=["csv", "json"], help="Formato do relatório (padrão csv)")
        sub.add_argument("--config", type=Path, help="Arquivo JSON de configuração")
        sub.add_argument("--verbose", action="store_true", help="Logging em nível DEBUG")

    return parser

def main(argv: Optional[List[str]] = None) -> int:
    """Função principal do projeto"""
    args = build_parser().parse_args(argv)

    logging.config.dictConfig(LOGGING_CONFIG)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    logger = logging.getLogger("cohcat")

    flags = {
        "command": args.command,
        "d": args.d,
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "epsilon": args.epsilon,
        "state_file": args.state_file,
        "out": args.out,
        "format": args.format,
    }

    try:
        experiment = load_experiment_config(flags, args.config)
    except (ValueError, FileNotFoundError) as e:
        logger.error(f"❌ {e}")
        return 1

    from jobs.orchestration.experiment_orchestrator import ExperimentOrchestrator

    _, code = ExperimentOrchestrator().run(experiment)
    return code

if __name__ == "__main__":
    sys.exit(main())
