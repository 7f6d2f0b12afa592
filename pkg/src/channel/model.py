"""
Modelo de canal clusterizado mmWave para o enlace BS -> usuário.
Sorteia a geometria dos raios e monta a matriz de canal N_R x N_T com
perda de percurso, vetores de apontamento ULA e componente LOS opcional.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from ..core.errors import ConfigurationError

logger = logging.getLogger(__name__)

LOS_MODES = ("off", "forced_on")


@dataclass(frozen=True)
class PathLossModel:
    """Modelo close-in: PL_dB = fspl_1m + 20 log10(f_GHz) + 10 n log10(d_m)."""
    fspl_1m_db: float = 32.4
    nlos_exponent: float = 3.19
    los_exponent: float = 2.0


@dataclass(frozen=True)
class ChannelParams:
    """Parâmetros do canal clusterizado (cenário street canyon por padrão)."""
    n_t: int = 100
    n_r: int = 30
    n_cl: int = 2
    n_ray_per_cluster: int = 20
    carrier_freq_ghz: float = 73.0
    cell_radius_m: float = 100.0
    min_distance_m: float = 10.0
    angle_spread_deg: float = 5.0
    los_mode: str = "off"
    pathloss: PathLossModel = field(default_factory=PathLossModel)

    def __post_init__(self):
        """Validação dos parâmetros."""
        for name in ("n_t", "n_r", "n_cl", "n_ray_per_cluster"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} deve ser >= 1, recebido {getattr(self, name)}")
        if not 0 < self.min_distance_m < self.cell_radius_m:
            raise ConfigurationError(
                f"distância mínima ({self.min_distance_m} m) deve ser positiva e menor "
                f"que o raio da célula ({self.cell_radius_m} m)"
            )
        if self.angle_spread_deg < 0:
            raise ConfigurationError(f"angle_spread_deg negativo: {self.angle_spread_deg}")
        if self.los_mode not in LOS_MODES:
            raise ConfigurationError(f"los_mode inválido: {self.los_mode} (use {', '.join(LOS_MODES)})")

    @property
    def n_paths(self) -> int:
        return self.n_cl * self.n_ray_per_cluster


@dataclass(frozen=True)
class PathComponent:
    """Um raio de propagação."""
    gain: complex
    attenuation: float
    aoa: float
    aod: float

    @property
    def strength(self) -> float:
        """Potência do raio |α|² L."""
        return abs(self.gain) ** 2 * self.attenuation


@dataclass
class ChannelRealization:
    """Canal de um usuário e a geometria que o gerou."""
    h: np.ndarray
    paths: List[PathComponent]
    user_distance_m: float
    los: Optional[PathComponent] = None


def steering_vector(phi: float, n: int) -> np.ndarray:
    """Resposta de ULA com espaçamento de meio comprimento de onda, norma unitária."""
    if n < 1:
        raise ConfigurationError(f"número de antenas deve ser >= 1, recebido {n}")
    return np.exp(-1j * np.pi * np.arange(n) * np.sin(phi)) / np.sqrt(n)


def path_loss(distance_m: float, carrier_freq_ghz: float, exponent: float = 3.19,
              fspl_1m_db: float = 32.4) -> float:
    """
    Ganho de potência linear do modelo close-in.

    Args:
        distance_m: Distância BS-usuário em metros (> 0)
        carrier_freq_ghz: Frequência da portadora em GHz
        exponent: Expoente de perda (3.19 NLOS, 2.0 LOS)
        fspl_1m_db: Perda de espaço livre a 1 m, sem o termo de frequência

    Returns:
        10^(-PL_dB/10)
    """
    if distance_m <= 0:
        raise ValueError(f"distância deve ser positiva, recebido {distance_m}")
    pl_db = fspl_1m_db + 20.0 * np.log10(carrier_freq_ghz) + 10.0 * exponent * np.log10(distance_m)
    return float(10.0 ** (-pl_db / 10.0))


def noise_variance(noise_figure_db: float, noise_density_dbm_hz: float,
                   bandwidth_hz: float) -> float:
    """Potência de ruído σ_n² = F N_0 W em watts."""
    if bandwidth_hz <= 0:
        raise ValueError(f"largura de banda deve ser positiva, recebido {bandwidth_hz}")
    return float(10.0 ** ((noise_figure_db + noise_density_dbm_hz - 30.0) / 10.0) * bandwidth_hz)


def _clip_angle(phi: np.ndarray) -> np.ndarray:
    return np.clip(phi, -np.pi / 2, np.pi / 2)


def draw_geometry(params: ChannelParams,
                  rng: np.random.Generator) -> Tuple[float, List[PathComponent]]:
    """
    Sorteia distância do usuário e os raios de todos os clusters.

    Os desvios angulares por raio são laplacianos com desvio padrão
    angle_spread_deg em torno do centro do cluster, truncados em [-π/2, π/2].
    """
    distance = float(rng.uniform(params.min_distance_m, params.cell_radius_m))
    attenuation = path_loss(distance, params.carrier_freq_ghz,
                            params.pathloss.nlos_exponent, params.pathloss.fspl_1m_db)

    # Laplace com escala b tem variância 2b²
    scale = np.deg2rad(params.angle_spread_deg) / np.sqrt(2.0)
    n_ray = params.n_ray_per_cluster

    paths = []
    for _ in range(params.n_cl):
        center_aod, center_aoa = rng.uniform(-np.pi / 2, np.pi / 2, size=2)
        if scale > 0:
            aods = _clip_angle(center_aod + rng.laplace(0.0, scale, size=n_ray))
            aoas = _clip_angle(center_aoa + rng.laplace(0.0, scale, size=n_ray))
        else:
            aods = np.full(n_ray, center_aod)
            aoas = np.full(n_ray, center_aoa)
        gains = (rng.standard_normal(n_ray) + 1j * rng.standard_normal(n_ray)) / np.sqrt(2.0)

        paths.extend(
            PathComponent(gain=complex(g), attenuation=attenuation, aoa=float(a), aod=float(d))
            for g, a, d in zip(gains, aoas, aods)
        )

    return distance, paths


def draw_los(params: ChannelParams, distance_m: float,
             rng: np.random.Generator) -> PathComponent:
    """Sorteia a componente LOS: fase uniforme e ângulos sorteados como centro de cluster."""
    psi = rng.uniform(0.0, 2.0 * np.pi)
    aod, aoa = rng.uniform(-np.pi / 2, np.pi / 2, size=2)
    attenuation = path_loss(distance_m, params.carrier_freq_ghz,
                            params.pathloss.los_exponent, params.pathloss.fspl_1m_db)
    return PathComponent(gain=complex(np.exp(1j * psi)), attenuation=attenuation,
                         aoa=float(aoa), aod=float(aod))


def assemble_channel(params: ChannelParams, distance_m: float,
                     paths: List[PathComponent],
                     los: Optional[PathComponent] = None) -> ChannelRealization:
    """
    Monta H = γ Σ α √L a_r(φ^r) a_t(φ^t)^H + H_LOS.

    Args:
        params: Parâmetros do canal
        distance_m: Distância do usuário
        paths: Raios sorteados (não vazio)
        los: Componente LOS, obrigatória quando los_mode = forced_on

    Returns:
        Realização do canal
    """
    if not paths:
        raise ConfigurationError("lista de raios vazia")

    n_r, n_t = params.n_r, params.n_t
    gamma = np.sqrt(n_r * n_t / len(paths))

    aoas = np.array([p.aoa for p in paths])
    aods = np.array([p.aod for p in paths])
    weights = np.array([p.gain * np.sqrt(p.attenuation) for p in paths])

    a_r = np.exp(-1j * np.pi * np.outer(np.arange(n_r), np.sin(aoas))) / np.sqrt(n_r)
    a_t = np.exp(-1j * np.pi * np.outer(np.arange(n_t), np.sin(aods))) / np.sqrt(n_t)
    if a_r.shape != (n_r, len(paths)) or a_t.shape != (n_t, len(paths)):
        raise ConfigurationError("dimensões dos vetores de apontamento inconsistentes com o canal")

    h = gamma * (a_r * weights) @ a_t.conj().T

    if params.los_mode == "forced_on":
        if los is None:
            raise ConfigurationError("los_mode=forced_on exige a componente LOS")
        h = h + np.sqrt(n_r * n_t * los.attenuation) * los.gain * np.outer(
            steering_vector(los.aoa, n_r), steering_vector(los.aod, n_t).conj()
        )

    return ChannelRealization(h=h, paths=list(paths), user_distance_m=float(distance_m),
                              los=los if params.los_mode == "forced_on" else None)


def draw_user_channel(params: ChannelParams, rng: np.random.Generator) -> ChannelRealization:
    """Sorteia geometria (e LOS, se ativo) e monta o canal de um usuário."""
    distance, paths = draw_geometry(params, rng)
    los = draw_los(params, distance, rng) if params.los_mode == "forced_on" else None
    return assemble_channel(params, distance, paths, los)
