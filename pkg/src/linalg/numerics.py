"""
Primitivas de álgebra linear complexa usadas por todas as sínteses de
beamforming: SVD, pseudo-inversa, projeção no complemento ortogonal e
quantização de fase.
"""

import logging
from typing import Tuple, Union

import numpy as np
import scipy.linalg

from ..core.errors import NumericalError

logger = logging.getLogger(__name__)

# Valores singulares abaixo de RANK_RTOL * s_max contam como zero
RANK_RTOL = 1e-12


def _as_matrix(a: np.ndarray, name: str = "A") -> np.ndarray:
    """Converte para matriz complexa 2-D e rejeita entradas vazias ou não finitas."""
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a[:, np.newaxis]
    if a.ndim != 2 or a.size == 0:
        raise NumericalError(f"{name} deve ser uma matriz não vazia", a.shape if a.ndim == 2 else None)
    if not np.all(np.isfinite(a)):
        raise NumericalError(f"{name} contém NaN/Inf", a.shape)
    return a


def svd(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    SVD econômica A = U diag(s) V^H.

    Args:
        a: Matriz complexa não vazia

    Returns:
        Tupla (U, s, V) com s em ordem decrescente; retorna V, não V^H
    """
    a = _as_matrix(a)
    try:
        u, s, vh = scipy.linalg.svd(a, full_matrices=False, check_finite=False)
    except np.linalg.LinAlgError:
        # gesdd às vezes não converge em matrizes mal condicionadas
        logger.debug(f"gesdd falhou em matriz {a.shape}, tentando gesvd")
        try:
            u, s, vh = scipy.linalg.svd(
                a, full_matrices=False, check_finite=False, lapack_driver="gesvd"
            )
        except np.linalg.LinAlgError as e:
            raise NumericalError(f"SVD não convergiu: {e}", a.shape) from e
    return u, s, vh.conj().T


def pseudo_inverse(a: np.ndarray) -> np.ndarray:
    """Pseudo-inversa de Moore-Penrose via SVD com corte relativo de posto."""
    a = _as_matrix(a)
    u, s, v = svd(a)
    if s[0] == 0.0:
        return np.zeros((a.shape[1], a.shape[0]), dtype=complex)
    keep = s > RANK_RTOL * s[0]
    s_inv = np.zeros_like(s)
    s_inv[keep] = 1.0 / s[keep]
    return (v * s_inv) @ u.conj().T


def orthonormal_basis(x: np.ndarray) -> np.ndarray:
    """Base ortonormal do espaço coluna de X (colunas nulas descartadas)."""
    x = np.asarray(x, dtype=complex)
    if x.ndim == 1:
        x = x[:, np.newaxis]
    if x.shape[1] == 0 or not np.any(x):
        return np.zeros((x.shape[0], 0), dtype=complex)
    u, s, _ = svd(x)
    rank = int(np.sum(s > RANK_RTOL * s[0]))
    return u[:, :rank]


def project_out(b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    Projeta as colunas de B no complemento ortogonal de span(X).

    Args:
        b: Matriz a projetar (N x p)
        x: Matriz cujo espaço coluna é removido (N x q); q = 0 devolve B

    Returns:
        (I - X_o X_o^H) B
    """
    b = np.asarray(b, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if b.ndim == 1:
        b = b[:, np.newaxis]
    if x.ndim == 1:
        x = x[:, np.newaxis]
    if x.shape[0] != b.shape[0]:
        raise NumericalError(
            f"project_out: B tem {b.shape[0]} linhas e X tem {x.shape[0]}", x.shape
        )
    if x.shape[1] == 0:
        return b.copy()
    x_o = orthonormal_basis(x)
    return b - x_o @ (x_o.conj().T @ b)


def quantize_phase(
    theta: Union[float, np.ndarray], n_q: int
) -> Union[float, np.ndarray]:
    """
    Fase mais próxima da grade {2π(q-1)/N_Q : q = 1..N_Q}, módulo 2π.

    Empates vão para o menor índice de quantização. Aceita escalares ou arrays.
    """
    if n_q < 2:
        raise ValueError(f"n_q deve ser >= 2, recebido {n_q}")
    step = 2.0 * np.pi / n_q
    wrapped = np.mod(theta, 2.0 * np.pi)
    position = wrapped / step - 0.5
    index = np.ceil(position)
    # Empate entre q=N_Q e q=1 na volta de 2π fica com q=1
    index = np.where(np.abs(position - (n_q - 1)) <= 1e-9, 0.0, np.mod(index, n_q))
    result = index * step
    if np.ndim(result) == 0:
        return float(result)
    return result
