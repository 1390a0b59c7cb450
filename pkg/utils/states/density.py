# -*- coding: utf-8 -*-
"""
Estados quânticos sobre uma base incoerente fixa
Layouts de fatores tensoriais, operadores densidade, estados puros,
mapas de defasagem e classificação (incoerente / quântico-incoerente)
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.config import protocol_config, tolerance_config
from utils.linalg.matrix_ops import (
    check_hermitian,
    check_state,
    hermitian_eig,
    partial_trace,
    tensor_all,
    trace_distance,
)

logger = logging.getLogger(__name__)

SubsystemSpec = Union[str, Iterable[str], None]
Seed = Union[int, np.random.Generator, np.random.SeedSequence, None]

@dataclass(frozen=True)
class Factor:
    """Fator tensorial: rótulo único, dimensão e parte (party) que o detém"""

    label: str
    dim: int
    party: str

@dataclass(frozen=True)
class SystemLayout:
    """
    Registro ordenado de fatores tensoriais

    A base incoerente de cada fator é a base computacional {|0⟩, ..., |d−1⟩};
    o primeiro fator é o índice mais significativo da matriz conjunta.
    """

    factors: Tuple[Factor, ...]

    def __post_init__(self):
        factors = tuple(f if isinstance(f, Factor) else Factor(*f) for f in self.factors)
        object.__setattr__(self, "factors", factors)

        labels = [f.label for f in factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"Rótulos de fatores duplicados: {labels}")
        for f in factors:
            if int(f.dim) < 1:
                raise ValueError(f"Dimensão inválida para o fator {f.label!r}: {f.dim}")

    @classmethod
    def single(cls, label: str = "S", dim: int = 2, party: Optional[str] = None) -> "SystemLayout":
        """Layout de um único fator"""
        return cls((Factor(label, int(dim), party or label),))

    @classmethod
    def of(cls, *factors: Tuple[str, int, str]) -> "SystemLayout":
        """Layout a partir de tuplas (rótulo, dimensão, parte)"""
        return cls(tuple(Factor(label, int(dim), party) for label, dim, party in factors))

    @classmethod
    def from_list(cls, rows: Sequence[Sequence[Any]]) -> "SystemLayout":
        """Inverso de to_list (formato JSON)"""
        return cls(tuple(Factor(str(label), int(dim), str(party)) for label, dim, party in rows))

    def to_list(self) -> List[List[Any]]:
        return [[f.label, f.dim, f.party] for f in self.factors]

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(f.dim for f in self.factors)

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(f.label for f in self.factors)

    @property
    def parties(self) -> Tuple[str, ...]:
        """Partes distintas, na ordem da primeira ocorrência"""
        return tuple(dict.fromkeys(f.party for f in self.factors))

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims)) if self.factors else 1

    def __len__(self) -> int:
        return len(self.factors)

    def index_of(self, label: str) -> int:
        for index, f in enumerate(self.factors):
            if f.label == label:
                return index
        raise ValueError(f"Subsistema desconhecido: {label!r} (disponíveis: {list(self.labels)})")

    def resolve(self, names: SubsystemSpec) -> Tuple[int, ...]:
        """
        Resolve nomes de subsistemas em índices de fatores

        Cada nome pode ser o rótulo de um fator ou o nome de uma parte
        (expandido para todos os fatores dela). None seleciona todos.

        Raises:
            ValueError: nome que não é rótulo nem parte
        """
        if names is None:
            return tuple(range(len(self.factors)))
        if isinstance(names, str):
            names = [names]

        indices = set()
        for name in names:
            if name in self.labels:
                indices.add(self.index_of(name))
                continue
            matches = [i for i, f in enumerate(self.factors) if f.party == name]
            if not matches:
                raise ValueError(f"Subsistema desconhecido: {name!r} (rótulos: {list(self.labels)}, partes: {list(self.parties)})")
            indices.update(matches)
        return tuple(sorted(indices))

    def complement(self, indices: Iterable[int]) -> Tuple[int, ...]:
        chosen = set(indices)
        return tuple(i for i in range(len(self.factors)) if i not in chosen)

    def sublayout(self, indices: Iterable[int]) -> "SystemLayout":
        return SystemLayout(tuple(self.factors[i] for i in sorted(set(indices))))

    def permuted(self, order: Sequence[int]) -> "SystemLayout":
        return SystemLayout(tuple(self.factors[i] for i in order))

    def concat(self, other: "SystemLayout") -> "SystemLayout":
        """Layout do produto tensorial self ⊗ other"""
        return SystemLayout(self.factors + other.factors)

    def relabel(self, labels: Optional[Dict[str, str]] = None, parties: Optional[Dict[str, str]] = None) -> "SystemLayout":
        """Renomeia rótulos e/ou partes; nomes ausentes dos mapas ficam iguais"""
        labels = labels or {}
        parties = parties or {}
        for name in labels:
            self.index_of(name)
        return SystemLayout(tuple(
            Factor(labels.get(f.label, f.label), f.dim, parties.get(f.party, f.party))
            for f in self.factors
        ))

    def replicate(self, copies: int, start: int = 1) -> "SystemLayout":
        """Layout de `copies` cópias, rótulos `rótulo#k` com k a partir de `start`"""
        return SystemLayout(tuple(
            Factor(f"{f.label}#{k}", f.dim, f.party)
            for k in range(start, start + copies)
            for f in self.factors
        ))

def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array

@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Operador densidade (Hermitiano, traço 1, PSD) sobre um layout"""

    layout: SystemLayout
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        total = self.layout.total_dim
        if matrix.shape != (total, total):
            raise ValueError(f"Matriz {matrix.shape} incompatível com o layout de dimensão {total}")

        matrix = check_hermitian(matrix)
        if total <= protocol_config.dense_check_max_dim * 2:
            check_state(matrix)
        else:
            trace = float(np.real(np.trace(matrix)))
            if abs(trace - 1.0) > tolerance_config.trace_atol:
                raise ValueError(f"Traço de estado deve ser 1, obtido {trace:.12g}")
            logger.debug(f"Verificação PSD omitida para dimensão {total}")

        object.__setattr__(self, "matrix", _readonly(matrix))

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def is_pure(self, atol: float = None) -> bool:
        atol = tolerance_config.equality_atol if atol is None else atol
        return abs(self.purity - 1.0) <= atol

@dataclass(frozen=True, eq=False)
class PureState:
    """Vetor de estado normalizado sobre um layout"""

    layout: SystemLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape[0] != self.layout.total_dim:
            raise ValueError(f"{amplitudes.shape[0]} amplitudes incompatíveis com o layout de dimensão {self.layout.total_dim}")
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1.0) > tolerance_config.trace_atol:
            raise ValueError(f"Estado puro deve ter norma 1, obtido {norm:.12g}")
        object.__setattr__(self, "amplitudes", _readonly(amplitudes))

    @property
    def dim(self) -> int:
        return self.layout.total_dim

    def density(self) -> DensityOperator:
        return DensityOperator(self.layout, np.outer(self.amplitudes, self.amplitudes.conj()))

State = Union[DensityOperator, PureState]

def as_density(state: State) -> DensityOperator:
    """Converte PureState em DensityOperator (identidade para DensityOperator)"""
    return state.density() if isinstance(state, PureState) else state

def as_pure(state: State) -> PureState:
    """
    Converte um estado puro em PureState

    Raises:
        ValueError: estado misto
    """
    if isinstance(state, PureState):
        return state
    if not state.is_pure():
        raise ValueError(f"Estado puro esperado, pureza {state.purity:.12g}")
    spectrum = hermitian_eig(state.matrix)
    return PureState(state.layout, spectrum.eigenvectors[:, 0])

def tensor(*states: State) -> State:
    """
    Produto tensorial de estados, concatenando layouts

    Resultado é PureState quando todas as entradas são puras.
    """
    if not states:
        raise ValueError("Pelo menos um estado é necessário")

    layout = states[0].layout
    for s in states[1:]:
        layout = layout.concat(s.layout)

    if all(isinstance(s, PureState) for s in states):
        amplitudes = states[0].amplitudes
        for s in states[1:]:
            amplitudes = np.kron(amplitudes, s.amplitudes)
        return PureState(layout, amplitudes)

    return DensityOperator(layout, tensor_all([as_density(s).matrix for s in states]))

def tensor_power(state: State, copies: int) -> State:
    """Estado ρ^⊗n com fatores rotulados `rótulo#1`, ..., `rótulo#n`"""
    if copies < 1:
        raise ValueError(f"Número de cópias deve ser positivo: {copies}")
    layout = state.layout.replicate(copies)
    if isinstance(state, PureState):
        amplitudes = np.ones(1, dtype=complex)
        for _ in range(copies):
            amplitudes = np.kron(amplitudes, state.amplitudes)
        return PureState(layout, amplitudes)
    return DensityOperator(layout, tensor_all([state.matrix] * copies))

def relabel(state: State, labels: Optional[Dict[str, str]] = None, parties: Optional[Dict[str, str]] = None) -> State:
    """Mesmo estado com rótulos/partes renomeados"""
    layout = state.layout.relabel(labels, parties)
    if isinstance(state, PureState):
        return PureState(layout, state.amplitudes)
    return DensityOperator(layout, state.matrix)

def partial_trace_state(state: State, keep: SubsystemSpec) -> DensityOperator:
    """
    Estado reduzido nos subsistemas `keep` (rótulos ou partes)

    Raises:
        ValueError: subsistema desconhecido ou seleção vazia
    """
    rho = as_density(state)
    indices = rho.layout.resolve(keep)
    if not indices:
        raise ValueError("Conjunto de subsistemas mantidos não pode ser vazio")
    if len(indices) == len(rho.layout):
        return rho
    matrix = partial_trace(rho.matrix, rho.layout.dims, indices)
    return DensityOperator(rho.layout.sublayout(indices), matrix)

def _dephasing_mask(dims: Sequence[int], indices: Iterable[int]) -> np.ndarray:
    total = int(np.prod(dims)) if len(dims) else 1
    mask = np.ones((total, total), dtype=bool)
    positions = np.arange(total)
    for index in indices:
        stride = int(np.prod(dims[index + 1:])) if index + 1 < len(dims) else 1
        digit = (positions // stride) % dims[index]
        mask &= digit[:, None] == digit[None, :]
    return mask

def dephase(rho: State, subsystems: SubsystemSpec = None) -> DensityOperator:
    """
    Mapa de defasagem Δ restrito aos fatores selecionados

    Zera os elementos fora da diagonal nos índices dos fatores escolhidos.
    Todos os fatores (None) dão Δ; os fatores de uma parte dão Δ^B.

    Raises:
        ValueError: rótulo de subsistema desconhecido
    """
    rho = as_density(rho)
    indices = rho.layout.resolve(subsystems)
    mask = _dephasing_mask(rho.layout.dims, indices)
    return DensityOperator(rho.layout, np.where(mask, rho.matrix, 0.0))

def maximally_coherent(d: int, label: str = "S", party: Optional[str] = None) -> PureState:
    """
    Estado maximamente coerente |φ_d⟩ = Σ|i⟩/√d

    Raises:
        ValueError: d < 2
    """
    if d < 2:
        raise ValueError(f"Estado maximamente coerente requer d ≥ 2, recebido {d}")
    return PureState(SystemLayout.single(label, d, party), np.full(d, 1.0 / np.sqrt(d)))

def basis_state(layout: SystemLayout, indices: Sequence[int]) -> PureState:
    """Ket da base incoerente |i₁ i₂ ... i_m⟩"""
    if len(indices) != len(layout):
        raise ValueError(f"{len(indices)} índices para {len(layout)} fatores")
    amplitudes = np.zeros(layout.total_dim, dtype=complex)
    amplitudes[np.ravel_multi_index(tuple(indices), layout.dims)] = 1.0
    return PureState(layout, amplitudes)

def is_incoherent(rho: State) -> bool:
    """Verdadeiro se todos os elementos fora da diagonal são < 1e-10 em módulo"""
    matrix = as_density(rho).matrix
    off_diagonal = matrix - np.diag(np.diag(matrix))
    return bool(np.max(np.abs(off_diagonal), initial=0.0) < tolerance_config.incoherence_atol)

def is_quantum_incoherent(rho: State, party_b: SubsystemSpec) -> bool:
    """
    Predicado quântico-incoerente: ρ = Σ p_i σ_i^A ⊗ |i⟩⟨i|^B

    Caracterização por ponto fixo: D(Δ^B ρ, ρ) < 1e-9.
    """
    rho = as_density(rho)
    return trace_distance(dephase(rho, party_b).matrix, rho.matrix) < tolerance_config.qi_atol

def _rng(seed: Seed) -> np.random.Generator:
    return np.random.default_rng(seed)

def random_pure(layout: SystemLayout, seed: Seed = None) -> PureState:
    """Estado puro Haar-aleatório (gaussiana complexa normalizada), reprodutível pela semente"""
    rng = _rng(seed)
    vector = rng.standard_normal(layout.total_dim) + 1j * rng.standard_normal(layout.total_dim)
    return PureState(layout, vector / np.linalg.norm(vector))

def random_density(layout: SystemLayout, rank: Optional[int] = None, seed: Seed = None) -> DensityOperator:
    """
    Estado misto de Ginibre GG†/Tr(GG†) com G de largura `rank`

    Raises:
        ValueError: rank fora de [1, dim]
    """
    total = layout.total_dim
    rank = total if rank is None else int(rank)
    if not 1 <= rank <= total:
        raise ValueError(f"Rank {rank} fora do intervalo [1, {total}]")
    rng = _rng(seed)
    g = rng.standard_normal((total, rank)) + 1j * rng.standard_normal((total, rank))
    matrix = g @ g.conj().T
    return DensityOperator(layout, matrix / np.real(np.trace(matrix)))

def purify(rho: State, reference_label: str = "ref", reference_party: str = "ref") -> PureState:
    """
    Purificação |ψ⟩ = Σ √λ_i |v_i⟩|i⟩ com referência de dimensão rank(ρ)

    Tr_ref |ψ⟩⟨ψ| = ρ dentro de 1e-10.
    """
    rho = as_density(rho)
    spectrum = hermitian_eig(rho.matrix)
    weights = np.where(spectrum.eigenvalues < tolerance_config.eigen_clamp, 0.0, spectrum.eigenvalues)
    rank = max(1, int(np.count_nonzero(weights)))

    amplitudes = (spectrum.eigenvectors[:, :rank] * np.sqrt(weights[:rank])).reshape(-1)
    amplitudes = amplitudes / np.linalg.norm(amplitudes)
    layout = rho.layout.concat(SystemLayout.single(reference_label, rank, reference_party))
    return PureState(layout, amplitudes)

def schmidt_state(coefficients: Sequence[float], labels: Tuple[str, str] = ("A~", "B~"),
                  parties: Tuple[str, str] = ("A", "B")) -> PureState:
    """
    Estado na forma de Schmidt Σ √λ_i |ii⟩

    Args:
        coefficients: Probabilidades de Schmidt λ_i (soma 1)
        labels: Rótulos dos dois fatores
        parties: Partes dos dois fatores
    """
    lambdas = np.asarray(coefficients, dtype=float)
    if np.any(lambdas < 0) or abs(lambdas.sum() - 1.0) > tolerance_config.trace_atol:
        raise ValueError(f"Coeficientes de Schmidt inválidos: {lambdas.tolist()}")
    d = lambdas.size
    amplitudes = np.zeros(d * d, dtype=complex)
    amplitudes[np.arange(d) * (d + 1)] = np.sqrt(lambdas)
    layout = SystemLayout.of((labels[0], d, parties[0]), (labels[1], d, parties[1]))
    return PureState(layout, amplitudes)

def schmidt_coefficients(psi: State, party_a: SubsystemSpec) -> np.ndarray:
    """Coeficientes de Schmidt λ_i (decrescentes) do corte party_a | resto"""
    psi = as_pure(psi)
    left = psi.layout.resolve(party_a)
    right = psi.layout.complement(left)
    dims = psi.layout.dims
    tensor_psi = psi.amplitudes.reshape(dims).transpose(list(left) + list(right))
    rows = int(np.prod([dims[i] for i in left])) if left else 1
    singular = np.linalg.svd(tensor_psi.reshape(rows, -1), compute_uv=False)
    return singular ** 2

def state_to_json(state: State) -> Dict[str, Any]:
    """
    Serializa em {layout: [[rótulo, dim, parte]...], matrix: [[re, im]...]}

    Estados puros usam a chave `amplitudes` no lugar de `matrix`.
    """
    if isinstance(state, PureState):
        values = state.amplitudes
        key = "amplitudes"
    else:
        values = state.matrix.reshape(-1)
        key = "matrix"
    return {
        "layout": state.layout.to_list(),
        key: [[float(v.real), float(v.imag)] for v in values]
    }

def state_from_json(payload: Dict[str, Any]) -> State:
    """
    Inverso de state_to_json

    Raises:
        ValueError: payload sem layout ou sem matrix/amplitudes
    """
    if "layout" not in payload:
        raise ValueError("JSON de estado sem a chave 'layout'")
    layout = SystemLayout.from_list(payload["layout"])

    if "amplitudes" in payload:
        values = np.array([complex(re, im) for re, im in payload["amplitudes"]])
        return PureState(layout, values)
    if "matrix" in payload:
        values = np.array([complex(re, im) for re, im in payload["matrix"]])
        total = layout.total_dim
        if values.size != total * total:
            raise ValueError(f"Matriz com {values.size} entradas para dimensão {total}")
        return DensityOperator(layout, values.reshape(total, total))
    raise ValueError("JSON de estado sem 'matrix' ou 'amplitudes'")
