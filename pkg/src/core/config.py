"""
Configuração da simulação.
Todos os campos têm padrão no cenário street canyon a 73 GHz; um arquivo
JSON pode sobrescrever qualquer subconjunto deles.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..beamforming.architectures import ALL_ARCHITECTURES, Architecture
from ..beamforming.synthesis import SynthesisSettings
from ..channel.model import ChannelParams, PathLossModel
from ..power.model import PowerConstants
from .errors import ConfigurationError

logger = logging.getLogger(__name__)

# Varreduras padrão: ASE/GEE versus N_T (N_R=30) e versus N_R (N_T=100)
SCENARIOS: Dict[str, Dict[str, List[int]]] = {
    "tx-sweep": {"n_t_list": [25, 50, 100, 150], "n_r_list": [30]},
    "rx-sweep": {"n_t_list": [100], "n_r_list": [10, 30, 60, 120]},
}

ENV_PREFIX = "MMBEAMSIM_"


@dataclass
class SimConfig:
    """Configuração da varredura Monte Carlo."""
    architectures: List[str] = field(default_factory=lambda: [a.value for a in ALL_ARCHITECTURES])
    k_users: int = 10
    m_streams: List[int] = field(default_factory=lambda: [1, 3])
    scenario: Optional[str] = None
    n_t_list: Optional[List[int]] = None
    n_r_list: Optional[List[int]] = None
    p_t_dbw: float = 0.0
    bandwidth_hz: float = 500e6
    noise_figure_db: float = 3.0
    noise_density_dbm_hz: float = -174.0
    drops: int = 200
    base_seed: int = 0
    threads: Optional[int] = None
    output_path: str = "results/sweep.csv"
    channel: ChannelParams = field(default_factory=ChannelParams)
    power: PowerConstants = field(default_factory=PowerConstants)
    synthesis: SynthesisSettings = field(default_factory=SynthesisSettings)

    def __post_init__(self):
        """Validação e preenchimento das listas da varredura."""
        if not self.architectures:
            raise ConfigurationError("lista de arquiteturas vazia")
        self.architectures = [Architecture.from_tag(a).value for a in self.architectures]

        if self.scenario is None:
            self.scenario = "custom" if (self.n_t_list or self.n_r_list) else "tx-sweep"
        if self.scenario != "custom" and self.scenario not in SCENARIOS:
            raise ConfigurationError(
                f"cenário inválido: {self.scenario} (use {', '.join(list(SCENARIOS) + ['custom'])})"
            )
        # Lista ausente em 'custom' cai no cenário padrão
        preset = SCENARIOS.get(self.scenario, SCENARIOS["tx-sweep"])
        if not self.n_t_list:
            self.n_t_list = list(preset["n_t_list"])
        if not self.n_r_list:
            self.n_r_list = list(preset["n_r_list"])

        for name in ("n_t_list", "n_r_list", "m_streams"):
            values = getattr(self, name)
            if not values:
                raise ConfigurationError(f"{name} não pode ser vazia")
            if any(int(v) < 1 for v in values):
                raise ConfigurationError(f"{name} contém valores < 1: {values}")
            setattr(self, name, [int(v) for v in values])

        if self.k_users < 1:
            raise ConfigurationError(f"k_users deve ser >= 1, recebido {self.k_users}")
        if self.drops < 1:
            raise ConfigurationError(f"drops deve ser >= 1, recebido {self.drops}")
        if self.bandwidth_hz <= 0:
            raise ConfigurationError(f"largura de banda deve ser positiva, recebido {self.bandwidth_hz}")
        if not 0 <= self.base_seed < 2 ** 64:
            raise ConfigurationError(f"semente deve caber em 64 bits sem sinal, recebido {self.base_seed}")
        if self.threads is not None and self.threads < 1:
            raise ConfigurationError(f"threads deve ser >= 1, recebido {self.threads}")

    @property
    def arch_list(self) -> List[Architecture]:
        return [Architecture.from_tag(a) for a in self.architectures]


def _build(cls, values: Dict[str, Any], section: str):
    """Instancia um dataclass rejeitando chaves desconhecidas."""
    known = {f.name for f in fields(cls)}
    unknown = set(values) - known
    if unknown:
        raise ConfigurationError(f"chaves desconhecidas em '{section}': {', '.join(sorted(unknown))}")
    try:
        return cls(**values)
    except TypeError as e:
        raise ConfigurationError(f"valores inválidos em '{section}': {e}") from e


def config_from_dict(data: Dict[str, Any]) -> SimConfig:
    """Constrói SimConfig a partir de um dicionário (formato do arquivo JSON)."""
    data = dict(data)
    channel = dict(data.pop("channel", {}) or {})
    if "pathloss" in channel:
        channel["pathloss"] = _build(PathLossModel, channel["pathloss"] or {}, "channel.pathloss")
    nested = {
        "channel": _build(ChannelParams, channel, "channel"),
        "power": _build(PowerConstants, data.pop("power", {}) or {}, "power"),
        "synthesis": _build(SynthesisSettings, data.pop("synthesis", {}) or {}, "synthesis"),
    }
    return _build(SimConfig, {**data, **nested}, "raiz")


def load_config(path: Optional[str] = None) -> SimConfig:
    """
    Carrega a configuração de um arquivo JSON.

    Args:
        path: Caminho do arquivo; None devolve a configuração padrão

    Returns:
        Configuração validada
    """
    if path is None:
        return SimConfig()

    config_path = Path(path)
    if not config_path.exists():
        raise ConfigurationError(f"arquivo de configuração não encontrado: {config_path}")
    try:
        with open(config_path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"JSON inválido em {config_path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigurationError(f"{config_path} deve conter um objeto JSON")

    config = config_from_dict(data)
    logger.info(f"Configuração carregada de {config_path}")
    return config


def apply_overrides(config: SimConfig, **overrides: Any) -> SimConfig:
    """Aplica sobrescritas da linha de comando (valores None são ignorados)."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    if not changes:
        return config
    if "scenario" in changes and changes["scenario"] in SCENARIOS:
        # Troca de cenário redefine as listas da varredura
        changes.setdefault("n_t_list", None)
        changes.setdefault("n_r_list", None)
    return replace(config, **changes)


def env_default(name: str, default: Optional[str] = None) -> Optional[str]:
    """Lê MMBEAMSIM_<name> do ambiente (o .env é carregado pela CLI)."""
    return os.environ.get(f"{ENV_PREFIX}{name}", default)


def config_to_dict(config: SimConfig) -> Dict[str, Any]:
    """Eco serializável da configuração resolvida."""
    return asdict(config)
