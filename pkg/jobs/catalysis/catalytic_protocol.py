# -*- coding: utf-8 -*-
"""
Protocolo catalítico de transformação de coerência
Construção do catalisador τ, execução dos passos (i)-(iii), distâncias de
saída/retorno do catalisador e critérios de convertibilidade
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from math import factorial
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np

from config.config import protocol_config, tolerance_config
from utils.channels.kraus import (
    KrausChannel,
    apply,
    compose,
    controlled_channel,
    cyclic_shift_order,
    identity_channel,
    is_permutation_invariant,
    permutation_channel,
    register_shift,
    symmetrize,
    tensor_channels,
    twirl_channel,
)
from utils.linalg.matrix_ops import partial_trace, permute_factors, tensor_all, trace_distance, von_neumann_entropy
from utils.states.density import DensityOperator, State, SystemLayout, as_density, as_pure, dephase

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class FlaggedState:
    """
    Estado bloco-diagonal no registrador: (1/n) Σ_k block_k ⊗ |k⟩⟨k|

    O registrador K é o último fator de `layout`; os blocos vivem nos demais.
    """

    layout: SystemLayout
    blocks: Tuple[np.ndarray, ...]

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def block_layout(self) -> SystemLayout:
        return self.layout.sublayout(range(len(self.layout) - 1))

    def to_density(self) -> DensityOperator:
        """Matriz densa Σ_k (1/n) block_k ⊗ |k⟩⟨k|"""
        projectors = np.eye(self.n)
        dense = sum(np.kron(block, np.outer(projectors[k], projectors[k])) for k, block in enumerate(self.blocks))
        return DensityOperator(self.layout, dense / self.n)

    def reduce(self, keep: Sequence[int]) -> "FlaggedState":
        """Traço parcial bloco a bloco, mantendo os fatores `keep` e o registrador"""
        dims = self.block_layout.dims
        blocks = tuple(partial_trace(block, dims, keep) for block in self.blocks)
        layout = self.block_layout.sublayout(keep).concat(self.layout.sublayout([len(self.layout) - 1]))
        return FlaggedState(layout, blocks)

    def distance(self, other: "FlaggedState") -> float:
        """D entre estados bloco-diagonais no mesmo registrador: Σ_k (1/n) D(bloco_k, bloco'_k)"""
        if self.n != other.n:
            raise ValueError(f"Registradores de dimensões diferentes: {self.n} vs {other.n}")
        return float(sum(trace_distance(a, b) for a, b in zip(self.blocks, other.blocks)) / self.n)

@dataclass(frozen=True, eq=False)
class CatalystState:
    """
    Catalisador τ = (1/n) Σ_k ρ^⊗(k−1) ⊗ Γ_{n−k} ⊗ |k⟩⟨k| em S^⊗(n−1) ⊗ K

    Γ_i é a redução de Γ às últimas i cópias; Γ_0 é o escalar 1.
    """

    n: int
    system_layout: SystemLayout
    gamma: DensityOperator
    flagged: FlaggedState
    symmetrized: bool = False

    @property
    def layout(self) -> SystemLayout:
        return self.flagged.layout

    @property
    def d(self) -> int:
        return self.system_layout.total_dim

    @property
    def total_dim(self) -> int:
        return self.layout.total_dim

    @property
    def ensemble(self) -> Tuple[Tuple[float, DensityOperator, int], ...]:
        """Tuplas (peso 1/n, operador em S^⊗(n−1), índice k do registrador a partir de 1)"""
        block_layout = self.flagged.block_layout
        return tuple(
            (1.0 / self.n, DensityOperator(block_layout, block), k + 1)
            for k, block in enumerate(self.flagged.blocks)
        )

    @cached_property
    def dense(self) -> DensityOperator:
        return self.flagged.to_density()

def _copy_layout(system: SystemLayout, copies: int, start: int = 1) -> SystemLayout:
    return system.replicate(copies, start=start)

def _register_layout(n: int) -> SystemLayout:
    return SystemLayout.single(protocol_config.register_label, n, protocol_config.register_label)

def _check_copies(n: int) -> None:
    if not 2 <= n <= protocol_config.max_copies:
        raise ValueError(f"Número de cópias fora de [2, {protocol_config.max_copies}]: {n}")

def build_catalyst(rho: State, gamma: State, n: int) -> CatalystState:
    """
    Monta o catalisador τ a partir de ρ e de Γ ≈ σ^⊗n

    Γ não invariante por permutação das cópias é simetrizado por twirl exato.

    Raises:
        ValueError: n fora do intervalo ou Γ fora do layout de n cópias de ρ
    """
    _check_copies(n)
    rho = as_density(rho)
    gamma = as_density(gamma)

    block = len(rho.layout)
    if gamma.layout.dims != rho.layout.dims * n:
        raise ValueError(f"Γ com layout {list(gamma.layout.dims)} não corresponde a {n} cópias de {list(rho.layout.dims)}")

    symmetrized = False
    if not is_permutation_invariant(gamma, n):
        logger.info(f"Γ não é invariante por permutação de cópias, aplicando twirl sobre {n} cópias")
        gamma = symmetrize(gamma, n)
        symmetrized = True

    dims = gamma.layout.dims
    factors = len(dims)

    def marginal(i: int) -> np.ndarray:
        if i == 0:
            return np.ones((1, 1), dtype=complex)
        if i == n:
            return gamma.matrix
        return partial_trace(gamma.matrix, dims, range(factors - i * block, factors))

    blocks = tuple(
        np.kron(tensor_all([rho.matrix] * (k - 1)), marginal(n - k))
        for k in range(1, n + 1)
    )

    layout = _copy_layout(rho.layout, n - 1, start=2).concat(_register_layout(n))
    flagged = FlaggedState(layout, blocks)
    logger.debug(f"Catalisador montado: n={n}, dimensão total {layout.total_dim}")
    return CatalystState(n=n, system_layout=rho.layout, gamma=gamma, flagged=flagged, symmetrized=symmetrized)

@dataclass(frozen=True, eq=False)
class ProtocolTrace:
    """Estados e distâncias registrados nos passos (i)-(iii)"""

    mu1: FlaggedState
    mu2: FlaggedState
    mu_sc: FlaggedState
    channel_output: DensityOperator
    output: DensityOperator
    catalyst_out: FlaggedState
    catalyst_return: float
    gamma_distance: Optional[float] = None
    output_distance: Optional[float] = None
    output_marginal_distance: Optional[float] = None
    certifications: Dict[str, bool] = field(default_factory=dict)
    dense_deviation: Optional[float] = None

    @property
    def distances(self) -> Tuple[Optional[float], Optional[float], float]:
        """(D(Γ, σ^⊗n), D(μ^SC, σ⊗τ), D(Tr_out μ^SC, τ))"""
        return self.gamma_distance, self.output_distance, self.catalyst_return

    @property
    def ratio(self) -> Optional[float]:
        if self.gamma_distance is None or self.output_distance is None:
            return None
        if self.gamma_distance <= tolerance_config.eigen_clamp:
            return None
        return self.output_distance / self.gamma_distance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma_distance": self.gamma_distance,
            "output_distance": self.output_distance,
            "catalyst_return": self.catalyst_return,
            "output_marginal_distance": self.output_marginal_distance,
            "ratio": self.ratio,
            "certifications": dict(self.certifications),
            "dense_deviation": self.dense_deviation,
        }

def _dense_cross_check(rho: DensityOperator, tau: CatalystState, channel: KrausChannel,
                       joint_layout: SystemLayout, copy_layout: SystemLayout,
                       ensemble: Sequence[FlaggedState]) -> float:
    """Executa os passos com canais densos em S^⊗n ⊗ K e devolve o maior desvio para o caminho por ensemble"""
    n = tau.n
    register = _register_layout(n)

    inner = channel
    if tau.symmetrized:
        inner = compose(channel, twirl_channel(copy_layout, n))

    step_i = controlled_channel(inner, register, active=n - 1)
    step_ii = tensor_channels(identity_channel(copy_layout), register_shift(n, protocol_config.register_label))
    step_iii = permutation_channel(joint_layout, cyclic_shift_order(n, len(rho.layout)) + [len(joint_layout) - 1])

    joint = DensityOperator(joint_layout, np.kron(rho.matrix, tau.dense.matrix))
    mu1 = step_i.apply(joint)
    mu2 = step_ii.apply(mu1)
    mu_sc = step_iii.apply(mu2)

    deviation = 0.0
    for dense, flagged in zip((mu1, mu2, mu_sc), ensemble):
        deviation = max(deviation, float(np.max(np.abs(dense.matrix - flagged.to_density().matrix))))
    return deviation

def dense_check_entries(channel: KrausChannel, tau: CatalystState) -> int:
    """Entradas das listas de Kraus do passo (i) controlado em S^⊗n ⊗ K"""
    n = tau.n
    joint_dim = tau.system_layout.total_dim ** n * n
    inner = channel.num_kraus * (factorial(n) if tau.symmetrized else 1)
    return (inner + n - 1) * joint_dim ** 2

def dense_check_enabled(channel: KrausChannel, tau: CatalystState) -> bool:
    """Padrão do caminho denso: n ≤ 4, dimensão conjunta ≤ 512 e listas de Kraus dentro do teto"""
    joint_dim = tau.system_layout.total_dim ** tau.n * tau.n
    if tau.n > 4 or joint_dim > protocol_config.dense_check_max_dim:
        return False
    entries = dense_check_entries(channel, tau)
    if entries > protocol_config.dense_check_max_entries:
        logger.info(f"Verificação densa omitida: {entries} entradas de Kraus excedem o teto "
                    f"{protocol_config.dense_check_max_entries}")
        return False
    return True

def run_protocol(rho: State, tau: CatalystState, channel: KrausChannel, target: Optional[State] = None,
                 dense_check: Optional[bool] = None) -> ProtocolTrace:
    """
    Executa o protocolo catalítico em ρ ⊗ τ

    (i) medida do registrador e Λ condicional ao resultado n;
    (ii) |k⟩ → |k+1⟩ e |n⟩ → |1⟩ no registrador;
    (iii) SWAP cíclico das cópias (nova 1 = antiga n, nova i+1 = antiga i).
    A saída é o primeiro fator após o SWAP; o catalisador são as posições 2..n e K.

    Args:
        rho: Estado de entrada em S
        tau: Catalisador montado para (S, n)
        channel: Λ em S^⊗n
        target: σ opcional; sem ele as distâncias baseadas em σ ficam None
        dense_check: Força/desliga a verificação densa (padrão: dense_check_enabled)

    Raises:
        ValueError: layouts de ρ, τ ou Λ incompatíveis
    """
    rho = as_density(rho)
    n = tau.n
    block = len(rho.layout)

    if rho.layout.dims != tau.system_layout.dims:
        raise ValueError(f"ρ com layout {list(rho.layout.dims)} incompatível com o catalisador {list(tau.system_layout.dims)}")
    expected = rho.layout.dims * n
    if channel.input_layout.dims != expected or channel.output_layout.dims != expected:
        raise ValueError(f"Λ deve atuar em S^⊗{n} com fatores {list(expected)}")

    copy_layout = _copy_layout(rho.layout, n)
    joint_layout = copy_layout.concat(_register_layout(n))
    copy_dims = copy_layout.dims

    # (i)
    channel_output = apply(channel, DensityOperator(copy_layout, tensor_all([rho.matrix] * n)))
    if tau.symmetrized:
        channel_output = symmetrize(channel_output, n)
    mu1_blocks = tuple(np.kron(rho.matrix, b) for b in tau.flagged.blocks[:-1]) + (channel_output.matrix,)
    mu1 = FlaggedState(joint_layout, mu1_blocks)

    # (ii)
    mu2 = FlaggedState(joint_layout, (mu1_blocks[-1],) + mu1_blocks[:-1])

    # (iii)
    order = cyclic_shift_order(n, block)
    mu_sc = FlaggedState(joint_layout, tuple(permute_factors(b, copy_dims, order) for b in mu2.blocks))

    output_matrix = sum(partial_trace(b, copy_dims, range(block)) for b in mu_sc.blocks) / n
    output = DensityOperator(rho.layout, output_matrix)
    catalyst_out = FlaggedState(tau.layout, mu_sc.reduce(range(block, n * block)).blocks)
    catalyst_return = catalyst_out.distance(tau.flagged)

    gamma_distance = output_distance = output_marginal_distance = None
    if target is not None:
        sigma = as_density(target)
        if sigma.layout.dims != rho.layout.dims:
            raise ValueError(f"Alvo σ com layout {list(sigma.layout.dims)} incompatível com ρ")
        gamma_distance = trace_distance(channel_output.matrix, tensor_all([sigma.matrix] * n))
        product = FlaggedState(joint_layout, tuple(np.kron(sigma.matrix, b) for b in tau.flagged.blocks))
        output_distance = mu_sc.distance(product)
        output_marginal_distance = trace_distance(output.matrix, sigma.matrix)

    certifications = {
        "step_i": channel.is_incoherent_operation(),
        "step_ii": register_shift(n).is_incoherent_operation(),
        "step_iii": permutation_channel(copy_layout, order).is_incoherent_operation(),
    }

    if dense_check is None:
        dense_check = dense_check_enabled(channel, tau)
    dense_deviation = None
    if dense_check:
        dense_deviation = _dense_cross_check(rho, tau, channel, joint_layout, copy_layout, (mu1, mu2, mu_sc))
        if dense_deviation > tolerance_config.hermitian_atol:
            logger.warning(f"Caminhos denso e por ensemble divergem: {dense_deviation:.3e}")

    return ProtocolTrace(
        mu1=mu1,
        mu2=mu2,
        mu_sc=mu_sc,
        channel_output=channel_output,
        output=output,
        catalyst_out=catalyst_out,
        catalyst_return=catalyst_return,
        gamma_distance=gamma_distance,
        output_distance=output_distance,
        output_marginal_distance=output_marginal_distance,
        certifications=certifications,
        dense_deviation=dense_deviation,
    )

def _dephased_entropy(psi: State) -> float:
    return von_neumann_entropy(dephase(as_pure(psi).density()).matrix)

def catalytic_pure_feasible(psi: State, phi: State) -> bool:
    """ψ → φ por IO catalítica sse S(Δψ) ≥ S(Δφ) (tolerância 1e-9)"""
    return _dephased_entropy(psi) >= _dephased_entropy(phi) - tolerance_config.equality_atol

class RateVerdict(str, Enum):
    POSSIBLE = "possible"
    IMPOSSIBLE = "impossible"
    BOUNDARY = "boundary"

def asymptotic_rate_feasible(psi: State, phi: State, rate: float) -> RateVerdict:
    """
    Viabilidade de ψ^⊗n → φ^⊗(Rn) por IO, comparando R a S(Δψ)/S(Δφ)

    Raises:
        ValueError: alvo livre (S(Δφ) = 0), taxa ilimitada
    """
    target = _dephased_entropy(phi)
    if target <= tolerance_config.eigen_clamp:
        raise ValueError("S(Δφ) = 0: alvo incoerente, taxa ilimitada")
    ratio = _dephased_entropy(psi) / target
    if rate < ratio - tolerance_config.equality_atol:
        return RateVerdict.POSSIBLE
    if rate > ratio + tolerance_config.equality_atol:
        return RateVerdict.IMPOSSIBLE
    return RateVerdict.BOUNDARY
