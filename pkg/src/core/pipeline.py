#!/usr/bin/env python3
"""
Pipeline principal do MMBeamSim
Coordena a varredura Monte Carlo: sorteio dos canais, síntese dos
beamformers de cada arquitetura e avaliação de ASE/GEE.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import psutil
from tqdm import tqdm

from .. import __version__
from ..beamforming.architectures import Architecture, BeamformerSet
from ..beamforming.synthesis import cm_fd, pzf_fd, synthesize
from ..channel.model import ChannelRealization, draw_user_channel, noise_variance
from ..metrics.performance import MetricSample, ase, dbw_to_watts, gee
from ..power.model import rf_chain_counts, rx_circuit_power, tx_circuit_power
from ..report.table import ResultTable
from .config import SimConfig, config_to_dict
from .errors import SimulationError

logger = logging.getLogger(__name__)

# Arquiteturas que sintetizam a partir de um alvo totalmente digital
_TARGET_BASED = (Architecture.PZF_FD, Architecture.PZF_HY, Architecture.SW_PHSH, Architecture.SW)


@dataclass(frozen=True)
class SweepPoint:
    """Um ponto da varredura."""
    index: int
    n_t: int
    n_r: int
    m: int


def sweep_points(config: SimConfig) -> List[SweepPoint]:
    """Produto cartesiano M x N_T x N_R em ordem determinística."""
    return [
        SweepPoint(index=i, n_t=n_t, n_r=n_r, m=m)
        for i, (m, n_t, n_r) in enumerate(product(config.m_streams, config.n_t_list, config.n_r_list))
    ]


def make_rng(base_seed: int, point_index: int, drop_index: int) -> np.random.Generator:
    """
    Gerador contador (Philox) chaveado por (semente, ponto, drop).
    O resultado de um drop não depende da ordem de execução.
    """
    seed_seq = np.random.SeedSequence(entropy=base_seed, spawn_key=(point_index, drop_index))
    return np.random.Generator(np.random.Philox(seed_seq))


def optimal_threads() -> int:
    """Número de workers baseado no hardware: núcleos físicos menos um."""
    cpu_count = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or 1
    return max(1, cpu_count - 1)


class SimulationPipeline:
    """Pipeline principal do MMBeamSim."""

    def __init__(self, config: SimConfig):
        """
        Inicializa o pipeline.

        Args:
            config: Configuração da simulação
        """
        self.config = config
        self.logger = logging.getLogger(__name__)

        self.architectures = config.arch_list
        self.p_t = dbw_to_watts(config.p_t_dbw)
        self.sigma2 = noise_variance(config.noise_figure_db, config.noise_density_dbm_hz,
                                     config.bandwidth_hz)
        self.threads = config.threads or optimal_threads()

        # Estatísticas de processamento
        self.processing_stats: Dict[str, float] = {}

        self.logger.info(
            f"Pipeline inicializado: {len(self.architectures)} arquiteturas, "
            f"P_T={self.p_t:.3g} W, σ²={self.sigma2:.3e} W, {self.threads} threads"
        )

    def draw_channels(self, point: SweepPoint, drop_index: int) -> List[ChannelRealization]:
        """Canais dos K usuários de um drop."""
        params = replace(self.config.channel, n_t=point.n_t, n_r=point.n_r)
        rng = make_rng(self.config.base_seed, point.index, drop_index)
        return [draw_user_channel(params, rng) for _ in range(self.config.k_users)]

    def _reference(self, channels: Sequence[ChannelRealization], m: int) -> Optional[BeamformerSet]:
        """Alvo totalmente digital compartilhado pelas arquiteturas do drop."""
        if not any(a in _TARGET_BASED for a in self.architectures):
            return None
        try:
            if self.config.synthesis.synthesis_target == "cm-fd":
                return cm_fd(channels, m)
            return pzf_fd(channels, m)
        except SimulationError as e:
            # Cada arquitetura dependente repete a síntese e registra o erro
            self.logger.debug(f"Alvo de síntese indisponível neste drop: {e}")
            return None

    def _evaluate(self, arch: Architecture, channels: Sequence[ChannelRealization],
                  point: SweepPoint, drop_index: int,
                  reference: Optional[BeamformerSet]) -> MetricSample:
        """Sintetiza e avalia uma arquitetura; erros viram linha sinalizada."""
        config = self.config
        k_users = config.k_users
        n_q = config.synthesis.n_q

        try:
            bf = synthesize(arch, channels, point.m, config.synthesis, reference)
            ase_val = ase(channels, bf, self.p_t, self.sigma2)
            n_t_rf, n_r_rf = bf.n_t_rf, bf.n_r_rf
            flags = tuple(bf.flags)
            self.logger.debug(f"Drop {drop_index}: {bf.summary()}")
        except SimulationError as e:
            self.logger.warning(
                f"{arch.value} falhou (N_T={point.n_t}, N_R={point.n_r}, M={point.m}, "
                f"drop {drop_index}): {e}"
            )
            counts = rf_chain_counts(arch, point.n_t, point.n_r, k_users, point.m)
            n_t_rf, n_r_rf = counts["n_t_rf"], counts["n_r_rf"]
            ase_val = float("nan")
            flags = (f"error:{e.kind}",)

        p_tx_c = tx_circuit_power(arch, point.n_t, n_t_rf, n_q, config.power)
        p_rx_c = rx_circuit_power(arch, point.n_r, n_r_rf, n_q, config.power)
        gee_val = gee(ase_val, config.bandwidth_hz, self.p_t, p_tx_c, p_rx_c, k_users,
                      config.power.eta)

        return MetricSample(
            arch=arch.value, n_t=point.n_t, n_r=point.n_r, k=k_users, m=point.m,
            p_t_dbw=config.p_t_dbw, drop=drop_index, ase=ase_val, p_tx_c=p_tx_c,
            p_rx_c=p_rx_c, gee=gee_val, flags=flags,
        )

    def run_drop(self, point: SweepPoint, drop_index: int) -> List[MetricSample]:
        """
        Executa um drop: todas as arquiteturas sobre o mesmo conjunto de canais.

        Args:
            point: Ponto da varredura
            drop_index: Índice do drop

        Returns:
            Uma amostra por arquitetura, na ordem da configuração
        """
        channels = self.draw_channels(point, drop_index)
        reference = self._reference(channels, point.m)
        return [self._evaluate(arch, channels, point, drop_index, reference)
                for arch in self.architectures]

    def metadata(self) -> Dict[str, Any]:
        """Cabeçalho dos resultados: versão, semente, configuração e constantes."""
        echo = config_to_dict(self.config)
        # Cabeçalho idêntico para qualquer número de threads
        echo.pop("threads", None)
        return {
            "tool": f"mmbeamsim {__version__}",
            "seed": self.config.base_seed,
            "noise_variance_w": self.sigma2,
            "config": echo,
            "power_constants": self.config.power.to_dict(),
        }

    def run_sweep(self, progress: bool = False) -> ResultTable:
        """
        Executa a varredura completa.

        Args:
            progress: Mostra barra de progresso

        Returns:
            Tabela com uma amostra por (ponto, drop, arquitetura)
        """
        start_time = time.time()
        points = sweep_points(self.config)
        tasks = [(point, drop) for point in points for drop in range(self.config.drops)]
        self.logger.info(
            f"Varredura: {len(points)} pontos x {self.config.drops} drops x "
            f"{len(self.architectures)} arquiteturas"
        )

        samples: List[MetricSample] = []
        # map preserva a ordem das tarefas independente do escalonamento
        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            results = executor.map(lambda task: self.run_drop(*task), tasks)
            for drop_samples in tqdm(results, total=len(tasks), desc="drops",
                                     disable=not progress, leave=False):
                samples.extend(drop_samples)

        self.processing_stats["sweep"] = time.time() - start_time
        flagged = sum(1 for s in samples if not s.valid)
        self.logger.info(
            f"Varredura concluída em {self.processing_stats['sweep']:.2f}s: "
            f"{len(samples)} amostras, {flagged} sinalizadas"
        )
        return ResultTable(samples=samples, metadata=self.metadata())

    def get_pipeline_info(self) -> Dict[str, Any]:
        """Retorna informações sobre o pipeline."""
        return {
            "config": self.config,
            "architectures": [a.value for a in self.architectures],
            "sweep_points": len(sweep_points(self.config)),
            "threads": self.threads,
            "processing_stats": self.processing_stats,
        }


def run_drop(config: SimConfig, point: SweepPoint, drop_index: int) -> List[MetricSample]:
    """Um drop com todas as arquiteturas da configuração."""
    return SimulationPipeline(config).run_drop(point, drop_index)


def run_sweep(config: SimConfig, progress: bool = False) -> ResultTable:
    """Varredura completa da configuração."""
    return SimulationPipeline(config).run_sweep(progress=progress)
