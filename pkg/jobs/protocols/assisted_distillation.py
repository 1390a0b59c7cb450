# -*- coding: utf-8 -*-
"""
Destilação assistida de coerência e planos catalíticos
Taxa de colaboração para estados puros, limite superior C_r^{A|B} para
estados mistos, redução em produtos e taxas ótimas de destilação/diluição
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

from utils.linalg.matrix_ops import von_neumann_entropy
from utils.measures.coherence import (
    Certification,
    MeasureResult,
    coherence_cost,
    coherent_state_for_rate,
    distillable_coherence,
    qi_relative_entropy,
)
from utils.states.density import (
    PureState,
    State,
    SubsystemSpec,
    as_density,
    as_pure,
    dephase,
    partial_trace_state,
    tensor,
)

logger = logging.getLogger(__name__)

def assisted_distillation_rate(psi: State, party_b: SubsystemSpec) -> float:
    """
    C_d^{A|B} de um estado puro: S(Δ(ψ^B)) com ψ^B = Tr_A |ψ⟩⟨ψ|

    Raises:
        ValueError: entrada mista (use collaboration_upper_bound)
    """
    psi = as_pure(psi)
    marginal = partial_trace_state(psi, party_b)
    return von_neumann_entropy(dephase(marginal).matrix)

def collaboration_upper_bound(rho: State, party_b: SubsystemSpec) -> float:
    """Limite C_d^{A|B}(ρ) ≤ C_r^{A|B}(ρ)"""
    return qi_relative_entropy(rho, party_b).value

def assisted_distillation(rho: State, party_b: SubsystemSpec) -> MeasureResult:
    """
    Coerência destilável de colaboração

    Exata para estados puros; para estados mistos devolve apenas o limite
    C_r^{A|B}, marcado como upper-bound.
    """
    rho = as_density(rho)
    if rho.is_pure():
        return MeasureResult("C_d^{A|B}", assisted_distillation_rate(rho, party_b), Certification.EXACT)
    return MeasureResult("C_d^{A|B}", collaboration_upper_bound(rho, party_b), Certification.UPPER_BOUND,
                         {"method": "qi_relative_entropy"})

def product_reduction_check(rho_a: State, rho_b: State) -> Dict[str, float]:
    """
    Em ρ^A ⊗ ρ^B a coerência de colaboração se reduz a C_d(ρ^B)

    Returns:
            qi_bound = C_r^{A|B}(ρ^A⊗ρ^B), local = C_d(ρ^B) e gap entre eles
    """
    rho_b = as_density(rho_b)
    joint = tensor(as_density(rho_a), rho_b)
    qi_bound = collaboration_upper_bound(joint, rho_b.layout.labels)
    local = distillable_coherence(rho_b).value
    return {"qi_bound": qi_bound, "local": local, "gap": qi_bound - local}

@dataclass(frozen=True)
class CatalyticPlan:
    """Taxa catalítica ótima e o estado puro que a realiza"""

    task: str
    rate: float
    certified: Certification
    resource: PureState

    def to_dict(self) -> Dict[str, Any]:
        return {
            "task": self.task,
            "rate": self.rate,
            "certified": self.certified.value,
            "resource_dim": self.resource.dim,
        }

def catalytic_distillation_plan(rho: State) -> CatalyticPlan:
    """ρ^⊗n → χ^⊗n por IO catalítica com C_r(χ) = C_d(ρ)"""
    rate = distillable_coherence(rho)
    return CatalyticPlan("distillation", rate.value, rate.certified, coherent_state_for_rate(rate.value))

def catalytic_dilution_plan(sigma: State, cost: Optional[MeasureResult] = None, **kwargs) -> CatalyticPlan:
    """
    χ₁^⊗n → σ^⊗n por IO catalítica com C_r(χ₁) = C_c(σ)

    `cost` reaproveita um C_c já calculado; kwargs seguem para coherence_cost.
    """
    cost = coherence_cost(sigma, **kwargs) if cost is None else cost
    if cost.certified is Certification.UPPER_BOUND:
        logger.info(f"Plano de diluição usa limite superior de C_c: {cost.value:.12g}")
    return CatalyticPlan("dilution", cost.value, cost.certified, coherent_state_for_rate(cost.value))
