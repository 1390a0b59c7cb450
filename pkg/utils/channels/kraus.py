# -*- coding: utf-8 -*-
"""
Canais CPTP na forma de Kraus
Verificação de preservação de traço e certificação de operação incoerente,
mais a biblioteca de canais usada pelo protocolo catalítico
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import unitary_group

from config.config import tolerance_config
from utils.linalg.matrix_ops import hermitian_eig, permute_factors
from utils.states.density import (
    DensityOperator,
    Seed,
    State,
    SubsystemSpec,
    SystemLayout,
    as_density,
    is_incoherent,
)

logger = logging.getLogger(__name__)

@dataclass(frozen=True, eq=False)
class KrausChannel:
    """
    Mapa CPTP ρ ↦ Σ K ρ K† entre dois layouts

    A preservação de traço Σ K†K = I é verificada na construção.
    """

    input_layout: SystemLayout
    output_layout: SystemLayout
    kraus: Tuple[np.ndarray, ...]
    name: str = "channel"

    def __post_init__(self):
        d_in = self.input_layout.total_dim
        d_out = self.output_layout.total_dim

        operators = []
        for k in self.kraus:
            k = np.array(k, dtype=complex)
            if k.shape != (d_out, d_in):
                raise ValueError(f"Operador de Kraus {k.shape} incompatível com ({d_out}, {d_in}) em {self.name!r}")
            k.setflags(write=False)
            operators.append(k)
        if not operators:
            raise ValueError(f"Canal {self.name!r} sem operadores de Kraus")
        object.__setattr__(self, "kraus", tuple(operators))

        deviation = self.trace_preservation_error()
        if deviation > tolerance_config.trace_atol:
            raise ValueError(f"Canal {self.name!r} não preserva traço: ‖ΣK†K − I‖ = {deviation:.3e}")

    def __len__(self) -> int:
        return self.num_kraus

    @property
    def num_kraus(self) -> int:
        return len(self.kraus)

    def trace_preservation_error(self) -> float:
        completeness = sum(k.conj().T @ k for k in self.kraus)
        return float(np.max(np.abs(completeness - np.eye(completeness.shape[0]))))

    def is_incoherent_operation(self) -> bool:
        """Todo operador de Kraus tem no máximo uma entrada > 1e-12 por coluna"""
        for k in self.kraus:
            nonzero_per_column = np.count_nonzero(np.abs(k) > tolerance_config.kraus_entry_atol, axis=0)
            if np.any(nonzero_per_column > 1):
                return False
        return True

    def apply(self, rho: State) -> DensityOperator:
        """
        Aplica Σ K ρ K†

        O layout de saída mantém os rótulos do estado quando o canal não
        altera o layout; caso contrário usa output_layout.

        Raises:
            ValueError: dimensões dos fatores incompatíveis
        """
        rho = self._check_input(rho)
        matrix = sum(k @ rho.matrix @ k.conj().T for k in self.kraus)
        return DensityOperator(self._output_layout_for(rho), matrix)

    def _check_input(self, rho: State) -> DensityOperator:
        rho = as_density(rho)
        if rho.layout.dims != self.input_layout.dims:
            raise ValueError(
                f"Layout incompatível com o canal {self.name!r}: {list(rho.layout.dims)} ≠ {list(self.input_layout.dims)}"
            )
        return rho

    def _output_layout_for(self, rho: DensityOperator) -> SystemLayout:
        return rho.layout if self.input_layout == self.output_layout else self.output_layout

class ReplacementChannel(KrausChannel):
    """
    Oráculo de protocolo assumido: ρ ↦ target·Tr ρ

    Aplicação e certificação vêm direto do alvo. Os rank·d_in operadores de
    Kraus √t_i |e_i⟩⟨j| (decomposição espectral do alvo) são montados sob
    demanda. Para alvo incoerente os |e_i⟩ são kets da base e o canal é
    incoerente.
    """

    def __init__(self, target: State, input_layout: Optional[SystemLayout] = None, name: str = "replacement"):
        target = as_density(target)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "input_layout", target.layout if input_layout is None else input_layout)
        object.__setattr__(self, "output_layout", target.layout)
        object.__setattr__(self, "name", name)

    def __repr__(self) -> str:
        return (f"ReplacementChannel(name={self.name!r}, input={list(self.input_layout.dims)}, "
                f"output={list(self.output_layout.dims)})")

    @cached_property
    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """(pesos t_i acima de eigen_clamp, vetores e_i em colunas)"""
        if is_incoherent(self.target):
            weights = np.real(np.diag(self.target.matrix))
            keep = np.flatnonzero(weights > tolerance_config.eigen_clamp)
            vectors = np.zeros((self.target.dim, keep.size))
            vectors[keep, np.arange(keep.size)] = 1.0
            return weights[keep], vectors
        spectrum = hermitian_eig(self.target.matrix)
        keep = np.flatnonzero(spectrum.eigenvalues > tolerance_config.eigen_clamp)
        return spectrum.eigenvalues[keep], spectrum.eigenvectors[:, keep]

    @property
    def num_kraus(self) -> int:
        return self.support[0].size * self.input_layout.total_dim

    @cached_property
    def kraus(self) -> Tuple[np.ndarray, ...]:
        weights, vectors = self.support
        d_in = self.input_layout.total_dim
        logger.debug(f"Montando {self.num_kraus} operadores de Kraus do canal {self.name!r}")

        # renormaliza a massa perdida pelo corte de autovalores
        scale = 1.0 / np.sqrt(np.sum(weights))
        operators = []
        for weight, vector in zip(weights, vectors.T):
            for j in range(d_in):
                k = np.zeros((self.target.dim, d_in), dtype=complex)
                k[:, j] = scale * np.sqrt(weight) * vector
                operators.append(k)
        return KrausChannel(self.input_layout, self.output_layout, tuple(operators), name=self.name).kraus

    def is_incoherent_operation(self) -> bool:
        return is_incoherent(self.target)

    def apply(self, rho: State) -> DensityOperator:
        rho = self._check_input(rho)
        trace = float(np.real(np.trace(rho.matrix)))
        return DensityOperator(self._output_layout_for(rho), trace * self.target.matrix)

def apply(channel: KrausChannel, rho: State) -> DensityOperator:
    """Λ(ρ) na forma funcional"""
    return channel.apply(rho)

def identity_channel(layout: SystemLayout) -> KrausChannel:
    return KrausChannel(layout, layout, (np.eye(layout.total_dim),), name="identity")

def unitary_channel(layout: SystemLayout, unitary: np.ndarray, name: str = "unitary") -> KrausChannel:
    """Canal de um único operador unitário (unitaridade verificada via preservação de traço)"""
    return KrausChannel(layout, layout, (np.asarray(unitary, dtype=complex),), name=name)

def random_unitary(dim: int, seed: Seed = None) -> np.ndarray:
    """Unitário Haar-aleatório de dimensão `dim`"""
    rng = np.random.default_rng(seed)
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return unitary_group.rvs(dim, random_state=rng)

def _permutation_matrix(dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    total = int(np.prod(dims))
    # posição nova j recebe o índice antigo source[j]
    source = np.arange(total).reshape(dims).transpose(order).reshape(-1)
    matrix = np.zeros((total, total))
    matrix[np.arange(total), source] = 1.0
    return matrix

def permutation_channel(layout: SystemLayout, perm: Sequence[int]) -> KrausChannel:
    """
    Unitário que reordena fatores: o novo fator i é o antigo fator perm[i]

    Raises:
        ValueError: permutação inválida ou fatores de dimensões diferentes trocados
    """
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(len(layout))):
        raise ValueError(f"Permutação inválida de {len(layout)} fatores: {perm}")
    dims = layout.dims
    for new, old in enumerate(perm):
        if dims[new] != dims[old]:
            raise ValueError(f"Permutação troca fatores de dimensões diferentes: {dims[old]} → posição de dimensão {dims[new]}")
    return KrausChannel(layout, layout, (_permutation_matrix(dims, perm),), name=f"permutation{tuple(perm)}")

def cyclic_shift_order(copies: int, block_size: int = 1) -> List[int]:
    """Ordem de fatores do SWAP cíclico: novo bloco 1 = antigo bloco n, novo bloco i+1 = antigo bloco i"""
    blocks = [copies - 1] + list(range(copies - 1))
    return [b * block_size + f for b in blocks for f in range(block_size)]

def register_shift(dim_k: int, label: str = "K", party: Optional[str] = None) -> KrausChannel:
    """
    Unitário incoerente no registrador: |n⟩→|1⟩ e |i⟩→|i+1⟩

    Com índices a partir de zero, |k⟩ → |(k+1) mod n⟩.
    """
    if dim_k < 1:
        raise ValueError(f"Dimensão do registrador deve ser positiva: {dim_k}")
    shift = np.zeros((dim_k, dim_k))
    shift[(np.arange(dim_k) + 1) % dim_k, np.arange(dim_k)] = 1.0
    layout = SystemLayout.single(label, dim_k, party)
    return KrausChannel(layout, layout, (shift,), name="register_shift")

def replacement_channel(target: State, input_layout: Optional[SystemLayout] = None) -> ReplacementChannel:
    """Oráculo ρ ↦ target para todo ρ"""
    return ReplacementChannel(target, input_layout)

def _block_orders(layout: SystemLayout, copies: int) -> Tuple[int, List[List[int]]]:
    if copies < 1 or len(layout) % copies:
        raise ValueError(f"Layout de {len(layout)} fatores não se divide em {copies} blocos")
    size = len(layout) // copies
    blocks = [layout.dims[b * size:(b + 1) * size] for b in range(copies)]
    if any(block != blocks[0] for block in blocks):
        raise ValueError(f"Blocos de dimensões diferentes: {blocks}")
    orders = [[b * size + f for b in perm for f in range(size)] for perm in permutations(range(copies))]
    return size, orders

def symmetrize(rho: State, copies: int) -> DensityOperator:
    """
    Twirl exato (1/n!) Σ_π P_π ρ P_π† sobre as permutações dos n blocos

    Raises:
        ValueError: layout não divisível em blocos iguais
    """
    rho = as_density(rho)
    _, orders = _block_orders(rho.layout, copies)
    total = sum(permute_factors(rho.matrix, rho.layout.dims, order) for order in orders)
    return DensityOperator(rho.layout, total / len(orders))

def is_permutation_invariant(rho: State, copies: int, atol: float = None) -> bool:
    """Invariância sob transposições adjacentes de blocos (geram todo o grupo simétrico)"""
    atol = tolerance_config.trace_atol if atol is None else atol
    rho = as_density(rho)
    size, _ = _block_orders(rho.layout, copies)
    for b in range(copies - 1):
        order = list(range(len(rho.layout)))
        order[b * size:(b + 2) * size] = order[(b + 1) * size:(b + 2) * size] + order[b * size:(b + 1) * size]
        swapped = permute_factors(rho.matrix, rho.layout.dims, order)
        if np.max(np.abs(swapped - rho.matrix)) > atol:
            return False
    return True

def twirl_channel(layout: SystemLayout, copies: int) -> KrausChannel:
    """Versão em Kraus do twirl: {√(1/n!) P_π}, incoerente por construção"""
    _, orders = _block_orders(layout, copies)
    weight = 1.0 / np.sqrt(factorial(copies))
    kraus = tuple(weight * _permutation_matrix(layout.dims, order) for order in orders)
    return KrausChannel(layout, layout, kraus, name="twirl")

def dephasing_channel(layout: SystemLayout, subsystems: SubsystemSpec = None, strength: float = 1.0) -> KrausChannel:
    """
    Defasagem parcial: (1−p)ρ + p·Δ_X(ρ) nos fatores X selecionados

    Kraus {√(1−p) I} ∪ {√p Π_x} com Π_x os projetores da base dos fatores X.
    """
    if not 0.0 <= strength <= 1.0:
        raise ValueError(f"Intensidade de defasagem fora de [0, 1]: {strength}")
    indices = layout.resolve(subsystems)
    dims = layout.dims
    positions = np.arange(layout.total_dim)

    digits = []
    for index in indices:
        stride = int(np.prod(dims[index + 1:])) if index + 1 < len(dims) else 1
        digits.append((positions // stride) % dims[index])

    kraus = []
    if strength < 1.0:
        kraus.append(np.sqrt(1.0 - strength) * np.eye(layout.total_dim))
    for outcome in product(*[range(dims[i]) for i in indices]):
        mask = np.ones(layout.total_dim, dtype=bool)
        for digit, value in zip(digits, outcome):
            mask &= digit == value
        kraus.append(np.sqrt(strength) * np.diag(mask.astype(float)))

    return KrausChannel(layout, layout, tuple(kraus), name="dephasing")

def random_incoherent_channel(layout: SystemLayout, num_kraus: int = 3, seed: Seed = None) -> KrausChannel:
    """
    Família IO aleatória K_k = P_k D_k

    P_k permutação da base, D_k diagonal com Σ_k |D_k[j,j]|² = 1 em cada coluna.
    """
    if num_kraus < 1:
        raise ValueError(f"Número de operadores de Kraus deve ser positivo: {num_kraus}")
    rng = np.random.default_rng(seed)
    total = layout.total_dim

    weights = rng.random((num_kraus, total)) + 1e-3
    weights /= weights.sum(axis=0, keepdims=True)
    phases = np.exp(2j * np.pi * rng.random((num_kraus, total)))

    kraus = []
    for k in range(num_kraus):
        perm = np.eye(total)[rng.permutation(total)]
        kraus.append(perm @ np.diag(np.sqrt(weights[k]) * phases[k]))
    return KrausChannel(layout, layout, tuple(kraus), name="random_io")

def compose(first: KrausChannel, second: KrausChannel) -> KrausChannel:
    """Canal second∘first (first é aplicado primeiro)"""
    if first.output_layout.dims != second.input_layout.dims:
        raise ValueError(f"Composição impossível: {list(first.output_layout.dims)} → {list(second.input_layout.dims)}")
    kraus = tuple(b @ a for b in second.kraus for a in first.kraus)
    return KrausChannel(first.input_layout, second.output_layout, kraus, name=f"{second.name}∘{first.name}")

def tensor_channels(*channels: KrausChannel) -> KrausChannel:
    """Canal produto Λ₁ ⊗ Λ₂ ⊗ ... com layouts concatenados"""
    if not channels:
        raise ValueError("Pelo menos um canal é necessário")
    result = channels[0]
    for other in channels[1:]:
        kraus = tuple(np.kron(a, b) for a in result.kraus for b in other.kraus)
        result = KrausChannel(
            result.input_layout.concat(other.input_layout),
            result.output_layout.concat(other.output_layout),
            kraus,
            name=f"{result.name}⊗{other.name}",
        )
    return result

def controlled_channel(inner: KrausChannel, register: SystemLayout, active: int) -> KrausChannel:
    """
    Aplica `inner` condicionado ao ket |active⟩ do registrador (último fator)

    Kraus {K_j ⊗ |a⟩⟨a|} ∪ {I ⊗ |k⟩⟨k| : k ≠ a}; medida projetiva de posto 1
    no registrador seguida da operação condicional.
    """
    if inner.input_layout.dims != inner.output_layout.dims:
        raise ValueError("Canal controlado requer layouts de entrada e saída iguais")
    dim_k = register.total_dim
    if not 0 <= active < dim_k:
        raise ValueError(f"Índice ativo {active} fora do registrador de dimensão {dim_k}")

    projectors = np.eye(dim_k)
    identity = np.eye(inner.input_layout.total_dim)

    kraus = [np.kron(k, np.outer(projectors[active], projectors[active])) for k in inner.kraus]
    kraus += [np.kron(identity, np.outer(projectors[k], projectors[k])) for k in range(dim_k) if k != active]

    layout = inner.input_layout.concat(register)
    return KrausChannel(layout, layout, tuple(kraus), name=f"controlled({inner.name})")

def _matrix_to_json(matrix: np.ndarray) -> List[List[float]]:
    return [[float(v.real), float(v.imag)] for v in matrix.reshape(-1)]

def channel_to_json(channel: KrausChannel) -> Dict[str, Any]:
    """Serializa no mesmo formato dos estados: layouts e lista de matrizes [re, im] row-major"""
    return {
        "name": channel.name,
        "input_layout": channel.input_layout.to_list(),
        "output_layout": channel.output_layout.to_list(),
        "kraus": [_matrix_to_json(k) for k in channel.kraus]
    }

def channel_from_json(payload: Dict[str, Any]) -> KrausChannel:
    input_layout = SystemLayout.from_list(payload["input_layout"])
    output_layout = SystemLayout.from_list(payload["output_layout"])
    shape = (output_layout.total_dim, input_layout.total_dim)
    kraus = tuple(
        np.array([complex(re, im) for re, im in entries]).reshape(shape)
        for entries in payload["kraus"]
    )
    return KrausChannel(input_layout, output_layout, kraus, name=payload.get("name", "channel"))
