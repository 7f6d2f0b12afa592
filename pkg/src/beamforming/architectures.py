"""
Arquiteturas de precodificação/combinação e o conjunto de beamformers
produzido por cada síntese.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.errors import ConfigurationError


class Architecture(Enum):
    """Estruturas de beamforming comparadas."""
    CM_FD = "cm-fd"
    PZF_FD = "pzf-fd"
    PZF_HY = "pzf-hy"
    AN = "an"
    SW_PHSH = "sw-phsh"
    SW = "sw"

    @classmethod
    def from_tag(cls, tag: str) -> "Architecture":
        """Converte o vocabulário da CLI (cm-fd, pzf-fd, ...) em Architecture."""
        normalized = tag.strip().lower().replace("_", "-").replace("+", "-")
        for arch in cls:
            if arch.value == normalized:
                return arch
        raise ConfigurationError(
            f"arquitetura desconhecida: {tag} (use {', '.join(a.value for a in cls)})"
        )

    @property
    def fully_digital(self) -> bool:
        return self in (Architecture.CM_FD, Architecture.PZF_FD)


ALL_ARCHITECTURES: Tuple[Architecture, ...] = tuple(Architecture)


@dataclass
class BeamformerSet:
    """
    Precodificadores q_k (N_T x M) e combinadores d_k (N_R x M) por usuário.

    Os fatores RF/BB ficam guardados quando a arquitetura os define:
    q_rf é compartilhado pela BS (N_T x N_T^RF) e q_bb[k] é o bloco do usuário k;
    d_rf[k], d_bb[k] são do terminal k. Para SW, q_rf/d_rf são matrizes de seleção.
    """
    arch: Architecture
    q: List[np.ndarray]
    d: List[np.ndarray]
    n_t_rf: int
    n_r_rf: int
    q_rf: Optional[np.ndarray] = None
    q_bb: Optional[List[np.ndarray]] = None
    d_rf: Optional[List[np.ndarray]] = None
    d_bb: Optional[List[np.ndarray]] = None
    flags: List[str] = field(default_factory=list)

    @property
    def n_users(self) -> int:
        return len(self.q)

    @property
    def n_streams(self) -> int:
        return self.q[0].shape[1]

    def max_column_norm_error(self) -> float:
        """Maior desvio |‖q_k[:, j]‖ - 1| entre todos os usuários."""
        return max(float(np.max(np.abs(np.linalg.norm(q, axis=0) - 1.0))) for q in self.q)

    def summary(self) -> Dict[str, object]:
        return {
            "arch": self.arch.value,
            "users": self.n_users,
            "streams": self.n_streams,
            "n_t_rf": self.n_t_rf,
            "n_r_rf": self.n_r_rf,
            "flags": list(self.flags),
        }
