"""
Tabela de resultados da varredura e resumo por ponto.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from ..metrics.performance import MetricSample

logger = logging.getLogger(__name__)

COLUMNS = [
    "arch", "n_t", "n_r", "k", "m", "p_t_dbw", "drop",
    "ase_bit_s_hz", "p_txc_w", "p_rxc_w", "gee_bit_per_joule", "flags",
]

POINT_KEYS = ["arch", "n_t", "n_r", "k", "m", "p_t_dbw"]


@dataclass
class ResultTable:
    """Amostras em ordem determinística mais o cabeçalho de metadados."""
    samples: List[MetricSample] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.samples)

    def to_frame(self) -> pd.DataFrame:
        """Uma linha por amostra, com as colunas do CSV."""
        rows = [
            {
                "arch": s.arch,
                "n_t": s.n_t,
                "n_r": s.n_r,
                "k": s.k,
                "m": s.m,
                "p_t_dbw": s.p_t_dbw,
                "drop": s.drop,
                "ase_bit_s_hz": s.ase,
                "p_txc_w": s.p_tx_c,
                "p_rxc_w": s.p_rx_c,
                "gee_bit_per_joule": s.gee,
                "flags": ";".join(s.flags),
            }
            for s in self.samples
        ]
        return pd.DataFrame(rows, columns=COLUMNS)

    def summary(self) -> pd.DataFrame:
        """
        Média e erro padrão de ASE e GEE por (arquitetura, ponto da varredura).

        Linhas sinalizadas com erro (métricas NaN) ficam fora das médias e
        são contadas em 'flagged'.
        """
        return summarize(self.to_frame())


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Resumo por ponto a partir de um DataFrame no formato do CSV."""
    if frame.empty:
        return pd.DataFrame(columns=POINT_KEYS + [
            "drops", "flagged", "ase_mean", "ase_sem", "gee_mean", "gee_sem",
            "p_txc_w", "p_rxc_w",
        ])

    grouped = frame.groupby(POINT_KEYS, sort=False)
    summary = grouped.agg(
        drops=("drop", "size"),
        flagged=("ase_bit_s_hz", lambda x: int(np.sum(~np.isfinite(x)))),
        ase_mean=("ase_bit_s_hz", "mean"),
        ase_sem=("ase_bit_s_hz", "sem"),
        gee_mean=("gee_bit_per_joule", "mean"),
        gee_sem=("gee_bit_per_joule", "sem"),
        p_txc_w=("p_txc_w", "mean"),
        p_rxc_w=("p_rxc_w", "mean"),
    ).reset_index()
    return summary
