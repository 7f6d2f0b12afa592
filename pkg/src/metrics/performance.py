"""
Métricas de desempenho: covariância do distúrbio, eficiência espectral
alcançável (ASE, bit/s/Hz) e eficiência energética global (GEE, bit/J).
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..beamforming.architectures import BeamformerSet
from ..channel.model import ChannelRealization
from ..core.errors import ConfigurationError, SingularDisturbanceError
from ..linalg.numerics import RANK_RTOL, svd

logger = logging.getLogger(__name__)


@dataclass
class MetricSample:
    """Uma linha de resultado: (arquitetura, ponto da varredura, drop)."""
    arch: str
    n_t: int
    n_r: int
    k: int
    m: int
    p_t_dbw: float
    drop: int
    ase: float
    p_tx_c: float
    p_rx_c: float
    gee: float
    flags: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return bool(np.isfinite(self.ase))

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _check_user(k: int, channels: Sequence[ChannelRealization], bf: BeamformerSet) -> None:
    if not 0 <= k < len(channels):
        raise ConfigurationError(f"índice de usuário inválido: {k} (K={len(channels)})")
    if bf.n_users != len(channels):
        raise ConfigurationError(
            f"beamformers para {bf.n_users} usuários, canais para {len(channels)}"
        )


def disturbance_covariance(k: int, channels: Sequence[ChannelRealization], bf: BeamformerSet,
                           p_t: float, sigma2: float) -> np.ndarray:
    """
    Covariância do ruído mais interferência na saída do combinador do usuário k.

    R = σ² D_k^H D_k + P_T/(MK) Σ_{ℓ≠k} D_k^H H_k Q_ℓ Q_ℓ^H H_k^H D_k
    """
    _check_user(k, channels, bf)
    d = bf.d[k]
    _, s, _ = svd(d)
    if s[0] == 0.0 or s[-1] <= RANK_RTOL * s[0]:
        raise SingularDisturbanceError("combinador sem posto coluna completo", k)

    k_users, m = bf.n_users, bf.n_streams
    scale = p_t / (m * k_users)
    effective = d.conj().T @ channels[k].h

    r = sigma2 * (d.conj().T @ d)
    for l in range(k_users):
        if l == k:
            continue
        g = effective @ bf.q[l]
        r = r + scale * (g @ g.conj().T)
    # Simetriza o erro de arredondamento
    return 0.5 * (r + r.conj().T)


def _log2det_hermitian_pd(a: np.ndarray) -> float:
    """log2 det de matriz hermitiana positiva definida via Cholesky."""
    chol = scipy.linalg.cholesky(a, lower=True, check_finite=False)
    return float(2.0 * np.sum(np.log(np.real(np.diag(chol)))) / np.log(2.0))


def user_rate(k: int, channels: Sequence[ChannelRealization], bf: BeamformerSet,
              p_t: float, sigma2: float) -> float:
    """Taxa do usuário k: log2 det(I + P_T/(KM) R^{-1} D^H H Q Q^H H^H D)."""
    r = disturbance_covariance(k, channels, bf, p_t, sigma2)
    k_users, m = bf.n_users, bf.n_streams
    g = bf.d[k].conj().T @ channels[k].h @ bf.q[k]

    # Escala por σ² para trabalhar com grandezas de ordem unitária
    r_scaled = r / sigma2
    g_scaled = g * np.sqrt(p_t / (k_users * m) / sigma2)
    try:
        chol = scipy.linalg.cholesky(r_scaled, lower=True, check_finite=False)
    except np.linalg.LinAlgError as e:
        raise SingularDisturbanceError(f"covariância do distúrbio não é definida positiva: {e}", k) from e
    whitened = scipy.linalg.solve_triangular(chol, g_scaled, lower=True, check_finite=False)
    return max(0.0, _log2det_hermitian_pd(np.eye(m) + whitened @ whitened.conj().T))


def ase(channels: Sequence[ChannelRealization], bf: BeamformerSet, p_t: float,
        sigma2: float) -> float:
    """Eficiência espectral alcançável somada sobre os usuários (bit/s/Hz)."""
    for k, (ch, q, d) in enumerate(zip(channels, bf.q, bf.d)):
        n_r, n_t = ch.h.shape
        if q.shape != (n_t, bf.n_streams) or d.shape != (n_r, bf.n_streams):
            raise ConfigurationError(
                f"usuário {k}: q {q.shape} / d {d.shape} incompatíveis com H {ch.h.shape}"
            )
    rates = [user_rate(k, channels, bf, p_t, sigma2) for k in range(len(channels))]
    logger.debug(f"{bf.arch.value}: taxas por usuário {np.round(rates, 3).tolist()}")
    return float(sum(rates))


def gee(ase_val: float, bandwidth_hz: float, p_t: float, p_tx_c: float, p_rx_c: float,
        k_users: int, eta: float) -> float:
    """Eficiência energética global W·ASE / (η P_T + P_TX,c + K P_RX,c) em bit/J."""
    denominator = eta * p_t + p_tx_c + k_users * p_rx_c
    if denominator <= 0:
        raise ConfigurationError(f"potência total consumida deve ser positiva, recebido {denominator}")
    return bandwidth_hz * ase_val / denominator


def dbw_to_watts(p_dbw: float) -> float:
    return float(10.0 ** (p_dbw / 10.0))
