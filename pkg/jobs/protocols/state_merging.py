# -*- coding: utf-8 -*-
"""
Fusão incoerente de estados quânticos (IQSM)
Entropia condicional, balanço de singletos, taxa E₀ com consumo nulo de
coerência e verificação numérica da cadeia que termina em R ≥ E₀
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

import numpy as np

from config.config import tolerance_config
from utils.linalg.matrix_ops import von_neumann_entropy
from utils.measures.coherence import entanglement_entropy, probabilities_for_entropy, qi_relative_entropy
from utils.states.density import (
    PureState,
    State,
    SubsystemSpec,
    as_pure,
    dephase,
    partial_trace_state,
    relabel,
    schmidt_state,
    tensor,
)

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class MergeAnalysis:
    """Quantidades de taxa da fusão de A em B com referência R"""

    e0: float
    tradeoff_rhs: float
    conditional_entropy: float
    chain: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

@dataclass(frozen=True)
class MergeBoundReport:
    """Resultado linha a linha da cadeia R ≥ E₀"""

    e0: float
    resource: float
    margin: float
    sufficient: bool
    checks: Dict[str, bool]
    values: Dict[str, float]

    @property
    def chain_holds(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

def _names(*specs: SubsystemSpec) -> List[str]:
    names: List[str] = []
    for spec in specs:
        if spec is None:
            continue
        names.extend([spec] if isinstance(spec, str) else list(spec))
    return names

def _entropy(state: State, keep: List[str], dephased: bool = False) -> float:
    reduced = partial_trace_state(state, keep)
    return von_neumann_entropy((dephase(reduced) if dephased else reduced).matrix)

def conditional_entropy(psi: State, party_a: SubsystemSpec, party_b: SubsystemSpec) -> float:
    """
    S(A|B)_ψ = S(ψ^{AB}) − S(ψ^B)

    Negativa quando a fusão rende singletos à taxa −S(A|B).
    """
    psi = as_pure(psi)
    return _entropy(psi, _names(party_a, party_b)) - _entropy(psi, _names(party_b))

def merging_resources(psi: State, party_a: SubsystemSpec, party_b: SubsystemSpec) -> Dict[str, float]:
    """Balanço de singletos da fusão padrão: consumo max(S(A|B), 0) e ganho max(−S(A|B), 0)"""
    value = conditional_entropy(psi, party_a, party_b)
    return {
        "conditional_entropy": value,
        "entanglement_consumed": max(value, 0.0),
        "entanglement_gained": max(-value, 0.0),
    }

def iqsm_e0(psi: State, party_r: SubsystemSpec, party_a: SubsystemSpec, party_b: SubsystemSpec) -> MergeAnalysis:
    """
    E₀ = S(Δρ^{AB}) − S(Δρ^B), taxa de emaranhamento com custo de coerência nulo

    Também calcula o lado direito da desigualdade de compromisso
    S(I^R⊗Δ^{AB} ρ) − S(I^{RA}⊗Δ^B ρ). party_r pode ser None quando não há referência.
    """
    psi = as_pure(psi)
    rho = psi.density()
    ab = _names(party_a, party_b)
    b = _names(party_b)

    dephased_ab = _entropy(rho, ab, dephased=True)
    dephased_b = _entropy(rho, b, dephased=True)
    entropy_ab = _entropy(rho, ab)
    entropy_b = _entropy(rho, b)

    tradeoff_rhs = von_neumann_entropy(dephase(rho, ab).matrix) - von_neumann_entropy(dephase(rho, b).matrix)

    chain = {
        "S(Δρ^AB)": dephased_ab,
        "S(Δρ^B)": dephased_b,
        "S(ρ^AB)": entropy_ab,
        "S(ρ^B)": entropy_b,
    }
    if party_r is not None:
        chain["S(ρ^R)"] = _entropy(rho, _names(party_r))

    return MergeAnalysis(
        e0=dephased_ab - dephased_b,
        tradeoff_rhs=tradeoff_rhs,
        conditional_entropy=entropy_ab - entropy_b,
        chain=chain,
    )

def _check_schmidt_form(chi: PureState) -> None:
    if len(chi.layout) != 2 or chi.layout.dims[0] != chi.layout.dims[1]:
        raise ValueError(f"χ deve ter dois fatores de mesma dimensão, recebido {list(chi.layout.dims)}")
    d = chi.layout.dims[0]
    amplitudes = chi.amplitudes.reshape(d, d)
    off_form = amplitudes - np.diag(np.diag(amplitudes))
    diagonal = np.diag(amplitudes)
    atol = tolerance_config.equality_atol
    if np.max(np.abs(off_form)) > atol or np.max(np.abs(diagonal.imag)) > atol or np.min(diagonal.real) < -atol:
        raise ValueError("χ não está na forma de Schmidt Σ√λ_i|ii⟩ com coeficientes reais não negativos")

def verify_merge_bound(psi: State, chi: State, party_r: SubsystemSpec = "R", party_a: SubsystemSpec = "A",
                       party_b: SubsystemSpec = "B") -> MergeBoundReport:
    """
    Verifica numericamente a cadeia que leva a R ≥ E₀

    (a) R = S(Tr_Ã χ) coincide com C_r^{Ã|B̃}(χ);
    (b) C_r^{·|·} é aditiva em ψ ⊗ χ;
    (c) renomear A como B′ não altera S(Δρ^{AB});
    (d) margem R − E₀. Recurso insuficiente é reportado, não levantado.

    Raises:
        ValueError: χ fora da forma de Schmidt
    """
    psi = as_pure(psi)
    chi = as_pure(chi)
    _check_schmidt_form(chi)
    atol = tolerance_config.equality_atol

    chi_a, chi_b = chi.layout.labels
    resource = entanglement_entropy(chi, chi_a)
    qi_chi = qi_relative_entropy(chi, chi_b).value

    qi_psi = qi_relative_entropy(psi, party_b).value
    joint = tensor(psi, chi)
    qi_joint = qi_relative_entropy(joint, _names(party_b) + [chi_b]).value

    analysis = iqsm_e0(psi, party_r, party_a, party_b)
    ab = _names(party_a, party_b)
    rho_ab = partial_trace_state(psi, ab)
    a_labels = [rho_ab.layout.labels[i] for i in rho_ab.layout.resolve(party_a)]
    moved = relabel(rho_ab, labels={label: f"{label}'" for label in a_labels},
                    parties={rho_ab.layout.factors[rho_ab.layout.index_of(label)].party: "B'" for label in a_labels})
    relabeled_entropy = von_neumann_entropy(dephase(moved).matrix)

    checks = {
        "resource_equals_qi": abs(resource - qi_chi) <= atol,
        "additivity": abs(qi_joint - (qi_psi + qi_chi)) <= atol,
        "relabeled_marginal": abs(relabeled_entropy - analysis.chain["S(Δρ^AB)"]) <= atol,
    }
    margin = resource - analysis.e0
    sufficient = margin >= -atol
    if not sufficient:
        logger.info(f"Recurso insuficiente: R={resource:.12g} < E₀={analysis.e0:.12g}")

    values = {
        "R": resource,
        "C_r(chi)": qi_chi,
        "C_r(psi)": qi_psi,
        "C_r(psi⊗chi)": qi_joint,
        "S(Δρ^B'B)": relabeled_entropy,
    }
    return MergeBoundReport(analysis.e0, resource, margin, sufficient, checks, values)

def schmidt_resource_for_rate(rate: float, labels=("A~", "B~"), parties=("A", "B")) -> PureState:
    """Estado de Schmidt χ com S(Tr_Ã χ) = rate"""
    return schmidt_state(probabilities_for_entropy(rate), labels=labels, parties=parties)
