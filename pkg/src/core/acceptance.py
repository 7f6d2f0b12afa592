"""
Tendências esperadas entre arquiteturas na escala completa (K=10, M=1).
Cada afirmação é avaliada sobre o resumo por ponto de uma varredura e
reporta a margem medida, passe ou não.
"""

import logging
from dataclasses import dataclass, replace
from typing import List

import numpy as np
import pandas as pd

from ..beamforming.architectures import ALL_ARCHITECTURES, Architecture
from .config import SimConfig
from .pipeline import run_sweep

logger = logging.getLogger(__name__)

ORDERING_N_T = [25, 50, 100, 150]
ORDERING_N_R = 30
TREND_N_T = [50, 100, 200, 400]
TREND_N_R = [10, 30, 60, 120]
TREND_FIXED_N_T = 100
AN_ASE_TOLERANCE = 0.25

LEADER = Architecture.PZF_FD.value


@dataclass
class ClaimResult:
    """Resultado de uma afirmação: margem >= 0 (ou >= 1 para razões) passa."""
    name: str
    passed: bool
    margin: float
    detail: str


def _pivot(summary: pd.DataFrame, column: str, axis: str) -> pd.DataFrame:
    """Médias por arquitetura (colunas) ao longo de n_t ou n_r (índice)."""
    return summary.pivot_table(index=axis, columns="arch", values=column, aggfunc="mean")


def claim_leader(summary: pd.DataFrame, column: str, max_n_t: int = 100) -> ClaimResult:
    """PZF-FD com a maior média de `column` em todo N_T <= max_n_t."""
    table = _pivot(summary, column, "n_t")
    table = table[table.index <= max_n_t]
    others = table.drop(columns=LEADER)
    ratio = table[LEADER] / others.max(axis=1)
    runner_up = others.idxmax(axis=1)
    margin = float(ratio.min())
    detail = "; ".join(
        f"N_T={n_t}: {LEADER}/{runner_up[n_t]} = {ratio[n_t]:.3f}" for n_t in table.index
    )
    metric = "ASE" if column.startswith("ase") else "GEE"
    return ClaimResult(f"{LEADER} com maior {metric} média (N_T <= {max_n_t})",
                       margin >= 1.0, margin, detail)


def claim_lowest_ase(summary: pd.DataFrame, arch: str = Architecture.SW.value) -> ClaimResult:
    """`arch` com a menor ASE média em todos os pontos."""
    table = _pivot(summary, "ase_mean", "n_t")
    ratio = table.drop(columns=arch).min(axis=1) / table[arch]
    margin = float(ratio.min())
    detail = "; ".join(f"N_T={n_t}: menor outra/{arch} = {ratio[n_t]:.3f}" for n_t in table.index)
    return ClaimResult(f"{arch} com menor ASE média", margin >= 1.0, margin, detail)


def claim_an_near_cm(summary: pd.DataFrame, min_n_t: int = 100,
                     tolerance: float = AN_ASE_TOLERANCE) -> ClaimResult:
    """ASE média do AN a no máximo `tolerance` abaixo da do CM-FD para N_T >= min_n_t."""
    table = _pivot(summary, "ase_mean", "n_t")
    table = table[table.index >= min_n_t]
    cm, an = table[Architecture.CM_FD.value], table[Architecture.AN.value]
    shortfall = (cm - an) / cm
    margin = float(tolerance - shortfall.max())
    detail = "; ".join(
        f"N_T={n_t}: AN {100 * shortfall[n_t]:.1f}% abaixo do CM-FD" for n_t in table.index
    )
    return ClaimResult(f"AN a até {100 * tolerance:.0f}% do CM-FD (N_T >= {min_n_t})",
                       margin >= 0.0, margin, detail)


def claim_gap_shrinks(summary: pd.DataFrame, other: str, axis: str) -> ClaimResult:
    """Diferença de GEE (PZF-FD menos `other`) não crescente ao longo de `axis`."""
    table = _pivot(summary, "gee_mean", axis)
    gap = table[LEADER] - table[other]
    steps = np.diff(gap.to_numpy())
    margin = float(-steps.max()) if steps.size else 0.0
    label = "N_T" if axis == "n_t" else "N_R"
    detail = "; ".join(f"{label}={v}: {g:.3e}" for v, g in gap.items())
    return ClaimResult(f"GEE({LEADER}) - GEE({other}) decrescente em {label}",
                       margin >= 0.0, margin, detail)


def evaluate_claims(ordering: pd.DataFrame, tx_trend: pd.DataFrame,
                    rx_trend: pd.DataFrame) -> List[ClaimResult]:
    """Avalia todas as afirmações a partir dos três resumos."""
    results = [
        claim_leader(ordering, "ase_mean"),
        claim_leader(ordering, "gee_mean"),
        claim_lowest_ase(ordering),
        claim_an_near_cm(ordering),
        claim_gap_shrinks(tx_trend, Architecture.SW_PHSH.value, "n_t"),
        claim_gap_shrinks(rx_trend, Architecture.AN.value, "n_r"),
    ]
    for r in results:
        logger.info(f"{r.name}: {'ok' if r.passed else 'não reproduzida'} "
                    f"(margem {r.margin:.3g}; {r.detail})")
    return results


def run_acceptance(config: SimConfig, drops: int, progress: bool = False) -> List[ClaimResult]:
    """
    Executa as três varreduras (ordenação em N_T, tendência em N_T e em N_R)
    com M=1 e avalia as afirmações.

    Args:
        config: Configuração base (K, P_T, canal, constantes)
        drops: Drops por ponto
        progress: Mostra barra de progresso

    Returns:
        Um resultado por afirmação
    """
    base = replace(config, m_streams=[1], drops=drops, scenario="custom")
    ordering = run_sweep(replace(base, architectures=[a.value for a in ALL_ARCHITECTURES],
                                 n_t_list=ORDERING_N_T, n_r_list=[ORDERING_N_R]), progress)
    tx_trend = run_sweep(replace(base, architectures=[LEADER, Architecture.SW_PHSH.value],
                                 n_t_list=TREND_N_T, n_r_list=[ORDERING_N_R]), progress)
    rx_trend = run_sweep(replace(base, architectures=[LEADER, Architecture.AN.value],
                                 n_t_list=[TREND_FIXED_N_T], n_r_list=TREND_N_R), progress)
    return evaluate_claims(ordering.summary(), tx_trend.summary(), rx_trend.summary())
