"""
Suíte de invariantes executada pelo comando `validate` em instâncias
aleatórias pequenas.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from ..beamforming.architectures import ALL_ARCHITECTURES, Architecture
from ..beamforming.synthesis import SynthesisSettings, hybrid_factorize, select_rows, synthesize
from ..channel.model import ChannelParams, draw_user_channel
from ..linalg.numerics import project_out, pseudo_inverse, quantize_phase, svd
from ..metrics.performance import ase, disturbance_covariance
from .errors import SimulationError

logger = logging.getLogger(__name__)

DEFAULT_INSTANCES = 1000


@dataclass
class CheckResult:
    """Resultado de um invariante."""
    name: str
    passed: bool
    instances: int
    detail: str = ""


def _random_matrix(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def _small_drop(rng: np.random.Generator, k_users: int = 3, n_t: int = 16, n_r: int = 4):
    params = ChannelParams(n_t=n_t, n_r=n_r, n_cl=2, n_ray_per_cluster=5)
    return [draw_user_channel(params, rng) for _ in range(k_users)]


def check_svd(rng: np.random.Generator) -> float:
    a = _random_matrix(rng, int(rng.integers(1, 12)), int(rng.integers(1, 12)))
    u, s, v = svd(a)
    scale = np.linalg.norm(a)
    err = np.linalg.norm(a - (u * s) @ v.conj().T) / scale
    ortho = max(np.linalg.norm(u.conj().T @ u - np.eye(len(s))),
                np.linalg.norm(v.conj().T @ v - np.eye(len(s))))
    return max(err, ortho)


def check_moore_penrose(rng: np.random.Generator) -> float:
    rank = int(rng.integers(1, 4))
    a = _random_matrix(rng, 6, rank) @ _random_matrix(rng, rank, 5)
    p = pseudo_inverse(a)
    scale = np.linalg.norm(a)
    return max(
        np.linalg.norm(a @ p @ a - a) / scale,
        np.linalg.norm(p @ a @ p - p) / max(np.linalg.norm(p), 1.0),
        np.linalg.norm((a @ p).conj().T - a @ p),
        np.linalg.norm((p @ a).conj().T - p @ a),
    )


def check_projection(rng: np.random.Generator) -> float:
    x = _random_matrix(rng, 8, 3)
    b = _random_matrix(rng, 8, 2)
    out = project_out(b, x)
    return max(np.linalg.norm(x.conj().T @ out), np.linalg.norm(project_out(out, x) - out)) \
        / np.linalg.norm(b)


def check_quantizer(rng: np.random.Generator) -> float:
    n_q = int(rng.integers(2, 17))
    theta = rng.uniform(-4 * np.pi, 4 * np.pi)
    out = quantize_phase(theta, n_q)
    grid = 2 * np.pi * np.arange(n_q) / n_q
    distance = np.abs(np.angle(np.exp(1j * (out - theta))))
    on_grid = np.min(np.abs(grid - out)) < 1e-12
    return 0.0 if on_grid and distance <= np.pi / n_q + 1e-12 else 1.0


def check_unit_columns(rng: np.random.Generator) -> float:
    channels = _small_drop(rng)
    worst = 0.0
    for arch in ALL_ARCHITECTURES:
        bf = synthesize(arch, channels, 1)
        worst = max(worst, bf.max_column_norm_error())
    return worst


def check_rf_structure(rng: np.random.Generator) -> float:
    channels = _small_drop(rng)
    settings = SynthesisSettings()
    worst = 0.0
    for arch in (Architecture.PZF_HY, Architecture.SW_PHSH):
        bf = synthesize(arch, channels, 1, settings)
        n = bf.q_rf.shape[0]
        worst = max(worst, float(np.max(np.abs(np.abs(bf.q_rf) - 1 / np.sqrt(n)))))
        if arch == Architecture.SW_PHSH:
            phases = np.angle(bf.q_rf)
            offgrid = np.angle(np.exp(1j * (quantize_phase(phases, settings.n_q) - phases)))
            worst = max(worst, float(np.max(np.abs(offgrid))))
    sw = synthesize(Architecture.SW, channels, 1, settings)
    worst = max(worst, float(np.linalg.norm(sw.q_rf.T @ sw.q_rf - np.eye(sw.n_t_rf))))
    return worst


def check_pzf_nulling(rng: np.random.Generator) -> float:
    channels = _small_drop(rng)
    bf = synthesize(Architecture.PZF_FD, channels, 1)
    dominant = [svd(ch.h)[2][:, :1] for ch in channels]
    return max(
        float(np.linalg.norm(dominant[l].conj().T @ bf.q[k]))
        for k in range(len(channels)) for l in range(len(channels)) if l != k
    )


def check_bcd_monotone(rng: np.random.Generator) -> float:
    trace: List[float] = []
    hybrid_factorize(_random_matrix(rng, 16, 2), 4, trace=trace)
    increases = np.diff(trace)
    return float(max(0.0, np.max(increases))) if len(increases) else 0.0


def check_covariance(rng: np.random.Generator) -> float:
    channels = _small_drop(rng)
    bf = synthesize(Architecture.CM_FD, channels, 1)
    worst = 0.0
    for k in range(len(channels)):
        r = disturbance_covariance(k, channels, bf, 1.0, 1e-12)
        hermitian = np.linalg.norm(r - r.conj().T) / np.linalg.norm(r)
        negative = max(0.0, -float(np.min(np.linalg.eigvalsh(r))) / np.linalg.norm(r))
        worst = max(worst, hermitian, negative)
    return worst


def check_combiner_invariance(rng: np.random.Generator) -> float:
    channels = _small_drop(rng, n_r=6)
    bf = synthesize(Architecture.CM_FD, channels, 2)
    before = ase(channels, bf, 1.0, 1e-12)
    transforms = [_random_matrix(rng, 2, 2) + 2 * np.eye(2) for _ in channels]
    bf.d = [d @ a for d, a in zip(bf.d, transforms)]
    return abs(ase(channels, bf, 1.0, 1e-12) - before)


def check_row_selection(rng: np.random.Generator) -> float:
    from itertools import combinations

    target = _random_matrix(rng, 8, 2)
    chosen = set(select_rows(target, 3).tolist())
    best = min(combinations(range(8), 3),
               key=lambda rows: np.linalg.norm(np.delete(target, list(rows), axis=0)))
    return 0.0 if chosen == set(best) else 1.0


CHECKS: List[tuple] = [
    ("SVD: reconstrução e ortonormalidade", check_svd, 1e-9),
    ("Pseudo-inversa: identidades de Moore-Penrose", check_moore_penrose, 1e-8),
    ("Projeção: ortogonalidade e idempotência", check_projection, 1e-9),
    ("Quantizador de fase: grade e distância", check_quantizer, 0.0),
    ("Precodificadores com colunas unitárias", check_unit_columns, 1e-9),
    ("Estrutura RF (módulo, grade, seleção)", check_rf_structure, 1e-9),
    ("PZF-FD: anulação dos subespaços dominantes", check_pzf_nulling, 1e-8),
    ("BCD: objetivo não crescente", check_bcd_monotone, 0.0),
    ("Covariância do distúrbio hermitiana PSD", check_covariance, 1e-10),
    ("ASE invariante à base do combinador", check_combiner_invariance, 1e-8),
    ("SW: seleção igual ao oráculo exaustivo", check_row_selection, 0.0),
]


def run_checks(instances: int = DEFAULT_INSTANCES, seed: int = 0) -> List[CheckResult]:
    """
    Executa todos os invariantes.

    Args:
        instances: Instâncias aleatórias por invariante
        seed: Semente do gerador

    Returns:
        Um resultado por invariante
    """
    results = []
    for i, (name, check, tolerance) in enumerate(CHECKS):
        rng = np.random.default_rng([seed, i])
        worst, error = 0.0, ""
        for _ in range(instances):
            try:
                worst = max(worst, float(check(rng)))
            except SimulationError as e:
                error = str(e)
                break
        passed = not error and worst <= tolerance
        detail = error or f"pior desvio {worst:.2e} (tolerância {tolerance:.0e})"
        logger.info(f"{name}: {'ok' if passed else 'FALHOU'} ({detail})")
        results.append(CheckResult(name=name, passed=passed, instances=instances, detail=detail))
    return results
