# -*- coding: utf-8 -*-
"""
Quantificadores de coerência
Entropia relativa de coerência, coerência destilável, coerência de formação
(forma fechada para qubits e otimizador para d > 2), custo de coerência,
entropia relativa quântico-incoerente e entropia de emaranhamento
"""

import logging
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np
import scipy.linalg
from scipy.optimize import brentq, minimize
from scipy.special import entr

from config.config import optimizer_config, tolerance_config
from utils.linalg.matrix_ops import hermitian_eig, shannon_entropy, von_neumann_entropy
from utils.states.density import (
    PureState,
    State,
    SubsystemSpec,
    SystemLayout,
    as_density,
    as_pure,
    dephase,
    is_incoherent,
    partial_trace_state,
)

logger = logging.getLogger(__name__)

class Certification(str, Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper-bound"

@dataclass(frozen=True)
class MeasureResult:
    """Valor de uma medida (bits) com sua certificação"""

    name: str
    value: float
    certified: Certification
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.value < -tolerance_config.equality_atol:
            raise ValueError(f"Medida {self.name} negativa: {self.value:.3e}")
        object.__setattr__(self, "value", max(0.0, float(self.value)))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["certified"] = self.certified.value
        return data

def _binary_entropy(p: float) -> float:
    return shannon_entropy(np.array([p, 1.0 - p]))

def relative_entropy_of_coherence(rho: State) -> MeasureResult:
    """C_r(ρ) = S(Δρ) − S(ρ), exato"""
    rho = as_density(rho)
    value = von_neumann_entropy(dephase(rho).matrix) - von_neumann_entropy(rho.matrix)
    return MeasureResult("C_r", value, Certification.EXACT)

def distillable_coherence(rho: State) -> MeasureResult:
    """C_d(ρ): taxa ótima de destilação, igual a C_r(ρ)"""
    result = relative_entropy_of_coherence(rho)
    return MeasureResult("C_d", result.value, Certification.EXACT)

def qi_relative_entropy(rho: State, party_b: SubsystemSpec) -> MeasureResult:
    """C_r^{A|B}(ρ) = S(Δ^B ρ) − S(ρ), exato"""
    rho = as_density(rho)
    value = von_neumann_entropy(dephase(rho, party_b).matrix) - von_neumann_entropy(rho.matrix)
    return MeasureResult("C_r^{A|B}", value, Certification.EXACT)

def entanglement_entropy(psi: State, party_a: SubsystemSpec) -> float:
    """
    S(Tr_A ψ) para estado puro

    Raises:
        ValueError: entrada mista
    """
    psi = as_pure(psi)
    left = psi.layout.resolve(party_a)
    rest = psi.layout.complement(left)
    if not rest:
        return 0.0
    reduced = partial_trace_state(psi, [psi.layout.labels[i] for i in rest])
    return von_neumann_entropy(reduced.matrix)

def _decomposition_cost(isometry: np.ndarray, sqrt_weights: np.ndarray, vectors: np.ndarray) -> float:
    """Σ_k p_k S(Δψ_k) em bits para a decomposição induzida pela isometria"""
    psi = isometry @ (sqrt_weights[:, None] * vectors.T)
    populations = np.abs(psi) ** 2
    probabilities = populations.sum(axis=1)
    return float((entr(populations).sum() - entr(probabilities).sum()) / np.log(2))

def _isometry_from_params(params: np.ndarray, shape: Tuple[int, int]) -> np.ndarray:
    half = shape[0] * shape[1]
    a = (params[:half] + 1j * params[half:]).reshape(shape)
    # fator polar A(A†A)^(-1/2)
    return scipy.linalg.polar(a)[0]

def _givens(theta: float, phi: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -np.exp(-1j * phi) * s], [np.exp(1j * phi) * s, c]])

def _refine_by_rotations(isometry: np.ndarray, cost) -> Tuple[np.ndarray, float, int]:
    """Rotações sequenciais de dois parâmetros entre pares de linhas até melhora < refinement_tol"""
    best = cost(isometry)
    m = isometry.shape[0]
    sweeps = 0

    for sweeps in range(1, optimizer_config.max_refinement_sweeps + 1):
        start = best
        for k in range(m):
            for l in range(k + 1, m):
                def rotated(x, k=k, l=l):
                    candidate = isometry.copy()
                    candidate[[k, l], :] = _givens(x[0], x[1]) @ isometry[[k, l], :]
                    return candidate

                result = minimize(lambda x: cost(rotated(x)), np.zeros(2), method="Nelder-Mead",
                                  options={"xatol": 1e-10, "fatol": 1e-12})
                if result.fun < best:
                    isometry = rotated(result.x)
                    best = cost(isometry)
        if start - best < optimizer_config.refinement_tol:
            break

    return isometry, best, sweeps

def _optimize_formation(rho_matrix: np.ndarray, num_restarts: int, seed: int) -> Tuple[float, Dict[str, Any]]:
    spectrum = hermitian_eig(rho_matrix)
    weights = np.where(spectrum.eigenvalues < tolerance_config.eigen_clamp, 0.0, spectrum.eigenvalues)
    rank = max(1, int(np.count_nonzero(weights)))
    sqrt_weights = np.sqrt(weights[:rank] / weights[:rank].sum())
    vectors = spectrum.eigenvectors[:, :rank]

    m = max(rank * rank, rank)
    shape = (m, rank)

    def cost(isometry):
        return _decomposition_cost(isometry, sqrt_weights, vectors)

    def objective(params):
        return cost(_isometry_from_params(params, shape))

    children = np.random.SeedSequence(seed).spawn(num_restarts)
    best_value, best_isometry, iterations = np.inf, None, 0

    for restart, child in enumerate(children):
        rng = np.random.default_rng(child)
        if restart == 0:
            # decomposição espectral como ponto de partida
            start = np.concatenate([np.eye(m, rank).reshape(-1), np.zeros(m * rank)])
        else:
            start = rng.standard_normal(2 * m * rank)

        result = minimize(objective, start, method="BFGS", options={"gtol": optimizer_config.bfgs_gtol})
        iterations += int(result.nit)
        if result.fun < best_value:
            best_value = float(result.fun)
            best_isometry = _isometry_from_params(result.x, shape)

    refined_isometry, refined_value, sweeps = _refine_by_rotations(best_isometry, cost)
    logger.debug(f"C_f otimizador: melhor BFGS {best_value:.12g}, refinado {refined_value:.12g} ({sweeps} varreduras)")

    diagnostics = {
        "method": "optimizer",
        "restarts": num_restarts,
        "bfgs_iterations": iterations,
        "refinement_sweeps": sweeps,
        "decomposition_size": m,
        "rank": rank,
    }
    return min(best_value, refined_value), diagnostics

def coherence_of_formation(rho: State, method: str = "auto", num_restarts: Optional[int] = None,
                           seed: Optional[int] = None) -> MeasureResult:
    """
    Coerência de formação C_f = min Σ p_i S(Δψ_i) sobre decomposições puras

    Args:
        rho: Estado
        method: 'auto' (exato quando possível), 'closed_form' (qubits) ou 'optimizer'
        num_restarts: Reinícios do otimizador (padrão: optimizer_config.num_restarts)
        seed: Semente dos reinícios (padrão: optimizer_config.base_seed)

    Returns:
        MeasureResult exato para estados puros, incoerentes e qubits;
        limite superior certificado para o otimizador
    """
    if method not in ("auto", "closed_form", "optimizer"):
        raise ValueError(f"Método de C_f desconhecido: {method!r}")
    rho = as_density(rho)

    if method == "auto":
        if rho.is_pure():
            value = von_neumann_entropy(dephase(rho).matrix)
            return MeasureResult("C_f", value, Certification.EXACT, {"method": "pure"})
        if is_incoherent(rho):
            return MeasureResult("C_f", 0.0, Certification.EXACT, {"method": "incoherent"})
        method = "closed_form" if rho.dim == 2 else "optimizer"

    if method == "closed_form":
        if rho.dim != 2:
            raise ValueError(f"Forma fechada de C_f só vale para qubits, dimensão {rho.dim}")
        off_diagonal = abs(rho.matrix[0, 1])
        p = 0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - 4.0 * off_diagonal ** 2)))
        return MeasureResult("C_f", _binary_entropy(p), Certification.EXACT, {"method": "closed_form"})

    num_restarts = optimizer_config.num_restarts if num_restarts is None else int(num_restarts)
    seed = optimizer_config.base_seed if seed is None else int(seed)
    value, diagnostics = _optimize_formation(rho.matrix, num_restarts, seed)
    return MeasureResult("C_f", value, Certification.UPPER_BOUND, diagnostics)

def coherence_cost(rho: State, **kwargs) -> MeasureResult:
    """C_c(ρ): custo de coerência, igual a C_f(ρ)"""
    result = coherence_of_formation(rho, **kwargs)
    return MeasureResult("C_c", result.value, result.certified, result.diagnostics)

def probabilities_for_entropy(rate: float) -> np.ndarray:
    """
    Distribuição p(t) = (1−t)·e₀ + t·uniforme com H(p) = rate

    A dimensão é a menor potência de 2 com log₂ d ≥ rate (mínimo 2).
    """
    if rate < 0:
        raise ValueError(f"Taxa deve ser não negativa: {rate}")
    d = max(2, int(2 ** np.ceil(rate - tolerance_config.equality_atol)))

    def distribution(t):
        p = np.full(d, t / d)
        p[0] += 1.0 - t
        return p

    if rate <= tolerance_config.equality_atol:
        return distribution(0.0)
    if abs(rate - np.log2(d)) <= tolerance_config.equality_atol:
        return distribution(1.0)

    t = brentq(lambda t: shannon_entropy(distribution(t)) - rate, 0.0, 1.0, xtol=1e-15)
    return distribution(t)

def coherent_state_for_rate(rate: float, label: str = "S", party: Optional[str] = None) -> PureState:
    """Estado puro χ com C_r(χ) = S(Δχ) = rate"""
    p = probabilities_for_entropy(rate)
    return PureState(SystemLayout.single(label, p.size, party), np.sqrt(p))
