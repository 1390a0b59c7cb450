# -*- coding: utf-8 -*-
"""
Kernel de álgebra linear densa para matrizes complexas
Decomposição Hermitiana, produtos tensoriais, traço parcial, normas e entropias
Todas as funções são puras: não mutam entradas nem mantêm estado global
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np
import scipy.linalg

from config.config import tolerance_config

logger = logging.getLogger(__name__)

@dataclass(frozen=True)
class Spectrum:
    """
    Decomposição espectral A = V Λ V†

    Autovalores em ordem decrescente; colunas de `eigenvectors` ortonormais.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Remonta a matriz V Λ V†"""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T

def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"Matriz quadrada esperada, recebido shape {a.shape}")
    return a

def hermitian_deviation(a: np.ndarray) -> float:
    """Maior desvio elemento a elemento entre a e a†"""
    a = _as_square(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0

def check_hermitian(a: np.ndarray, atol: float = None) -> np.ndarray:
    """
    Valida que a matriz é Hermitiana dentro da tolerância

    Args:
        a: Matriz quadrada complexa
        atol: Tolerância elemento a elemento (padrão: tolerance_config.hermitian_atol)

    Returns:
        Versão exatamente simetrizada (a + a†)/2

    Raises:
        ValueError: se o desvio exceder a tolerância
    """
    atol = tolerance_config.hermitian_atol if atol is None else atol
    a = _as_square(a)
    deviation = hermitian_deviation(a)
    if deviation > atol:
        raise ValueError(f"Matriz não Hermitiana: desvio máximo {deviation:.3e} > {atol:.0e}")
    return (a + a.conj().T) / 2

def hermitian_eig(a: np.ndarray) -> Spectrum:
    """
    Decomposição espectral de uma matriz Hermitiana

    Args:
        a: Matriz Hermitiana (tolerância 1e-12 elemento a elemento)

    Returns:
        Spectrum com autovalores decrescentes e autovetores unitários

    Raises:
        ValueError: para entrada não Hermitiana
    """
    h = check_hermitian(a)
    eigenvalues, eigenvectors = scipy.linalg.eigh(h)

    # eigh devolve ordem crescente
    spectrum = Spectrum(eigenvalues=eigenvalues[::-1].copy(), eigenvectors=eigenvectors[:, ::-1].copy())

    error = np.linalg.norm(h - spectrum.reconstruct())
    bound = tolerance_config.reconstruction_rtol * max(1.0, np.linalg.norm(h))
    if error > bound:
        logger.warning(f"Reconstrução espectral acima do limite: {error:.3e} > {bound:.3e}")

    return spectrum

def eigenvalues(a: np.ndarray) -> np.ndarray:
    """Apenas os autovalores (decrescentes) de uma matriz Hermitiana"""
    return scipy.linalg.eigvalsh(check_hermitian(a))[::-1]

def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Produto de Kronecker a⊗b com índice (i,k),(j,l) → a[i,j]·b[k,l]"""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))

def tensor_all(matrices: Sequence[np.ndarray]) -> np.ndarray:
    """Produto tensorial de uma sequência; sequência vazia resulta no escalar 1 (matriz 1x1)"""
    return reduce(tensor_product, matrices, np.ones((1, 1), dtype=complex))

def _check_layout(a: np.ndarray, dims: Sequence[int]) -> None:
    total = int(np.prod(dims)) if len(dims) else 1
    if any(int(d) < 1 for d in dims):
        raise ValueError(f"Dimensões de fatores devem ser positivas: {list(dims)}")
    if total != a.shape[0]:
        raise ValueError(f"Layout inconsistente: produto das dimensões {list(dims)} = {total} ≠ {a.shape[0]}")

def partial_trace(a: np.ndarray, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """
    Traço parcial sobre os fatores fora de `keep`

    Args:
        a: Matriz sobre o produto tensorial dos fatores `dims`
        dims: Dimensões dos fatores, em ordem
        keep: Índices dos fatores mantidos (ordem do layout é preservada)

    Returns:
        Matriz reduzida de dimensão prod(dims[keep])
    """
    a = _as_square(a)
    dims = [int(d) for d in dims]
    _check_layout(a, dims)

    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise ValueError("Conjunto de subsistemas mantidos não pode ser vazio")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise ValueError(f"Índices de fatores fora do layout: {keep}")

    n = len(dims)
    tensor = a.reshape(dims + dims)

    row_axes = list(range(n))
    col_axes = [k + n if k in keep else k for k in range(n)]
    out_axes = keep + [k + n for k in keep]

    reduced = np.einsum(tensor, row_axes + col_axes, out_axes)
    kept_dim = int(np.prod([dims[k] for k in keep]))
    return reduced.reshape(kept_dim, kept_dim)

def permute_factors(a: np.ndarray, dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """
    Reordena fatores tensoriais: o novo fator i é o antigo fator order[i]

    Equivale a P a P† com P a permutação de fatores.
    """
    a = _as_square(a)
    dims = [int(d) for d in dims]
    _check_layout(a, dims)
    n = len(dims)
    if sorted(order) != list(range(n)):
        raise ValueError(f"Permutação inválida de {n} fatores: {list(order)}")

    tensor = a.reshape(dims + dims)
    axes = list(order) + [k + n for k in order]
    return tensor.transpose(axes).reshape(a.shape)

def trace_norm(a: np.ndarray) -> float:
    """Norma do traço ‖a‖₁ de uma matriz Hermitiana"""
    return float(np.sum(np.abs(eigenvalues(a))))

def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """
    Distância do traço D(a,b) = ½‖a − b‖₁

    Raises:
        ValueError: dimensões diferentes ou entrada não Hermitiana
    """
    a = _as_square(a)
    b = _as_square(b)
    if a.shape != b.shape:
        raise ValueError(f"Dimensões incompatíveis para distância do traço: {a.shape} vs {b.shape}")
    return 0.5 * trace_norm(check_hermitian(a) - check_hermitian(b))

def check_state(a: np.ndarray) -> np.ndarray:
    """
    Valida operador densidade: Hermitiano, traço 1 e PSD dentro da folga

    Returns:
        Autovalores (decrescentes) com valores abaixo de eigen_clamp zerados
    """
    values = eigenvalues(a)
    trace = float(np.real(np.trace(a)))
    if abs(trace - 1.0) > tolerance_config.trace_atol:
        raise ValueError(f"Traço de estado deve ser 1, obtido {trace:.12g}")
    if values.size and values[-1] < -tolerance_config.psd_slack:
        raise ValueError(f"Autovalor negativo significativo: {values[-1]:.3e}")
    return np.where(values < tolerance_config.eigen_clamp, 0.0, values)

def shannon_entropy(probabilities: np.ndarray) -> float:
    """Entropia de Shannon em bits com 0·log 0 = 0"""
    p = np.asarray(probabilities, dtype=float)
    p = np.where(p < tolerance_config.eigen_clamp, 0.0, p)
    nonzero = p[p > 0]
    return float(max(0.0, -np.sum(nonzero * np.log2(nonzero))))

def von_neumann_entropy(a: np.ndarray) -> float:
    """
    Entropia de von Neumann S(a) = −Σ λ log₂ λ

    Raises:
        ValueError: autovalor negativo significativo ou traço ≠ 1
    """
    return shannon_entropy(check_state(a))

def relative_entropy(rho: np.ndarray, sigma: np.ndarray) -> float:
    """
    Entropia relativa S(ρ‖σ) = Tr(ρ log₂ ρ − ρ log₂ σ)

    Returns:
        Valor finito quando supp(ρ) ⊆ supp(σ); float('inf') caso contrário
    """
    rho = _as_square(rho)
    sigma = _as_square(sigma)
    if rho.shape != sigma.shape:
        raise ValueError(f"Dimensões incompatíveis: {rho.shape} vs {sigma.shape}")

    entropy_rho = von_neumann_entropy(rho)
    check_state(sigma)
    spectrum = hermitian_eig(sigma)

    # Populações de ρ na base própria de σ
    populations = np.real(np.einsum("ji,jk,ki->i", spectrum.eigenvectors.conj(), rho, spectrum.eigenvectors))
    support = spectrum.eigenvalues > tolerance_config.eigen_clamp

    if np.sum(populations[~support]) > tolerance_config.psd_slack:
        return float("inf")

    cross = float(np.sum(populations[support] * np.log2(spectrum.eigenvalues[support])))
    return max(0.0, -entropy_rho - cross)
