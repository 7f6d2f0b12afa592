"""
Síntese dos precodificadores e combinadores de cada arquitetura.
CM-FD e PZF-FD são totalmente digitais; PZF-HY, SW+PHSH e SW aproximam
um alvo totalmente digital sob restrições de hardware; AN aponta feixes
para os raios dominantes.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..channel.model import ChannelRealization, steering_vector
from ..core.errors import ConfigurationError, DegenerateChannelError, RankCollisionError
from ..linalg.numerics import RANK_RTOL, project_out, pseudo_inverse, quantize_phase, svd
from .architectures import Architecture, BeamformerSet

logger = logging.getLogger(__name__)

# Norma abaixo da qual uma coluna projetada é considerada nula
COLLISION_TOL = 1e-10

SYNTHESIS_TARGETS = ("pzf-fd", "cm-fd")


@dataclass(frozen=True)
class SynthesisSettings:
    """Parâmetros das sínteses com restrição de hardware."""
    n_q: int = 8
    min_sep_deg: float = 5.0
    bcd_max_iters: int = 100
    bcd_rel_tol: float = 1e-4
    synthesis_target: str = "pzf-fd"

    def __post_init__(self):
        """Validação dos parâmetros."""
        if self.n_q < 2:
            raise ConfigurationError(f"n_q deve ser >= 2, recebido {self.n_q}")
        if self.min_sep_deg < 0:
            raise ConfigurationError(f"min_sep_deg negativo: {self.min_sep_deg}")
        if self.bcd_max_iters < 1:
            raise ConfigurationError(f"bcd_max_iters deve ser >= 1, recebido {self.bcd_max_iters}")
        if self.bcd_rel_tol < 0:
            raise ConfigurationError(f"bcd_rel_tol negativo: {self.bcd_rel_tol}")
        if self.synthesis_target not in SYNTHESIS_TARGETS:
            raise ConfigurationError(
                f"alvo de síntese inválido: {self.synthesis_target} (use {', '.join(SYNTHESIS_TARGETS)})"
            )


def _dims(channels: Sequence[ChannelRealization]) -> Tuple[int, int, int]:
    if not channels:
        raise ConfigurationError("conjunto de canais vazio")
    n_r, n_t = channels[0].h.shape
    return len(channels), n_t, n_r


def _normalize_columns(q: np.ndarray, user: int) -> np.ndarray:
    norms = np.linalg.norm(q, axis=0)
    if np.any(norms < COLLISION_TOL):
        raise DegenerateChannelError("coluna do precodificador nula após a síntese", user)
    return q / norms


def _dominant_subspaces(channels: Sequence[ChannelRealization],
                        m: int) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """M vetores singulares dominantes (esquerdos, direitos) de cada canal."""
    left, right = [], []
    for k, ch in enumerate(channels):
        u, s, v = svd(ch.h)
        if s[0] == 0.0 or s[m - 1] <= RANK_RTOL * s[0]:
            raise DegenerateChannelError(f"posto do canal menor que M={m}", k)
        left.append(u[:, :m])
        right.append(v[:, :m])
    return left, right


def cm_fd(channels: Sequence[ChannelRealization], m: int) -> BeamformerSet:
    """Beamforming casado ao canal: M vetores singulares dominantes de cada H_k."""
    k_users, n_t, n_r = _dims(channels)
    if m < 1 or m > min(n_t, n_r):
        raise ConfigurationError(f"M={m} fora de [1, min(N_T, N_R)={min(n_t, n_r)}]")
    if m * k_users > n_t:
        raise ConfigurationError(f"M*K={m * k_users} excede N_T={n_t}")

    left, right = _dominant_subspaces(channels, m)
    return BeamformerSet(arch=Architecture.CM_FD, q=right, d=left, n_t_rf=n_t, n_r_rf=n_r)


def pzf_fd(channels: Sequence[ChannelRealization], m: int,
           cm: Optional[BeamformerSet] = None) -> BeamformerSet:
    """
    Zero-forcing parcial: projeta o precodificador CM-FD do usuário k no
    complemento ortogonal dos M vetores singulares direitos dominantes dos
    demais usuários; combinador (H_k q_k)^+ guardado como d_k = ((H_k q_k)^+)^H.
    """
    k_users, n_t, _ = _dims(channels)
    if n_t <= m * (k_users - 1) + m:
        raise ConfigurationError(
            f"N_T={n_t} deve exceder M(K-1)+M={m * k_users} para o zero-forcing parcial"
        )
    if cm is None:
        cm = cm_fd(channels, m)

    q_list, d_list = [], []
    for k, ch in enumerate(channels):
        others = [cm.q[l] for l in range(k_users) if l != k]
        interference = np.hstack(others) if others else np.zeros((n_t, 0), dtype=complex)
        q = project_out(cm.q[k], interference)
        norms = np.linalg.norm(q, axis=0)
        if np.any(norms < COLLISION_TOL):
            raise RankCollisionError(
                f"projeção anulou coluna do precodificador (norma {norms.min():.2e})", k
            )
        q = q / norms
        d = pseudo_inverse(ch.h @ q).conj().T
        q_list.append(q)
        d_list.append(d)

    return BeamformerSet(arch=Architecture.PZF_FD, q=q_list, d=d_list, n_t_rf=n_t,
                         n_r_rf=channels[0].h.shape[0])


def _bcd_objective(target: np.ndarray, rf: np.ndarray, bb: np.ndarray) -> float:
    return float(np.linalg.norm(target - rf @ bb))


def hybrid_factorize(target: np.ndarray, n_rf: int, max_iters: int = 100,
                     rel_tol: float = 1e-4, initial_rf: Optional[np.ndarray] = None,
                     trace: Optional[List[float]] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Fatoração target ≈ rf @ bb com entradas de rf de módulo 1/√N.

    Descida por coordenadas em blocos: bb é o mínimo de quadrados para rf
    fixo; cada coluna de rf é então atualizada em forma fechada com as
    demais fixas. Ambos os passos não aumentam o objetivo.

    Args:
        target: Matriz alvo N x c
        n_rf: Número de cadeias RF (>= c)
        max_iters: Máximo de iterações
        rel_tol: Para quando a queda relativa do objetivo fica abaixo disso
        initial_rf: Fases iniciais (N x n_rf); padrão são as fases das
            primeiras n_rf colunas do alvo, ciclando se preciso
        trace: Se fornecida, recebe o objetivo ao fim de cada iteração

    Returns:
        Tupla (rf, bb)
    """
    target = np.asarray(target, dtype=complex)
    if target.ndim == 1:
        target = target[:, np.newaxis]
    n, cols = target.shape
    if target.size == 0:
        raise ConfigurationError("alvo da fatoração vazio")
    if n_rf < cols:
        raise ConfigurationError(f"n_rf={n_rf} menor que o número de colunas do alvo ({cols})")

    amplitude = 1.0 / np.sqrt(n)
    if initial_rf is None:
        seed_cols = target[:, np.arange(n_rf) % cols]
    else:
        seed_cols = np.asarray(initial_rf, dtype=complex)
        if seed_cols.shape != (n, n_rf):
            raise ConfigurationError(f"initial_rf deve ser {n}x{n_rf}, recebido {seed_cols.shape}")
    rf = amplitude * np.exp(1j * np.angle(seed_cols))

    bb = pseudo_inverse(rf) @ target
    objective = _bcd_objective(target, rf, bb)
    if trace is not None:
        trace.append(objective)

    for iteration in range(max_iters):
        if objective == 0.0:
            break
        previous = rf.copy(), bb
        residual = target - rf @ bb
        for j in range(n_rf):
            contribution = np.outer(rf[:, j], bb[j, :])
            residual += contribution
            correlation = residual @ bb[j, :].conj()
            # Entradas com correlação nula mantêm a fase atual
            phases = np.where(np.abs(correlation) > 0, np.angle(correlation), np.angle(rf[:, j]))
            rf[:, j] = amplitude * np.exp(1j * phases)
            residual -= np.outer(rf[:, j], bb[j, :])

        bb = pseudo_inverse(rf) @ target
        new_objective = _bcd_objective(target, rf, bb)
        if new_objective > objective:
            # Só arredondamento aumenta o objetivo aqui; mantém o melhor iterado
            rf, bb = previous
            break
        if trace is not None:
            trace.append(new_objective)

        decrease = (objective - new_objective) / objective
        objective = new_objective
        logger.debug(f"BCD iteração {iteration + 1}: objetivo {objective:.6e}")
        if decrease < rel_tol:
            break

    return rf, bb


def _target(channels: Sequence[ChannelRealization], m: int, settings: "SynthesisSettings",
            reference: Optional[BeamformerSet]) -> BeamformerSet:
    """Beamformer totalmente digital que as estruturas restritas aproximam."""
    wanted = Architecture.from_tag(settings.synthesis_target)
    if reference is not None and reference.arch == wanted:
        return reference
    if wanted == Architecture.CM_FD:
        return cm_fd(channels, m)
    return pzf_fd(channels, m)


def _check_rf_chains(n_t: int, n_r: int, k_users: int, m: int,
                     n_t_rf: int, n_r_rf: int) -> None:
    if n_t_rf != k_users * m:
        raise ConfigurationError(f"N_T^RF={n_t_rf} deve ser K*M={k_users * m}")
    if n_r_rf != m:
        raise ConfigurationError(f"N_R^RF={n_r_rf} deve ser M={m}")
    if n_t_rf > n_t or n_r_rf > n_r:
        raise ConfigurationError(
            f"cadeias RF ({n_t_rf}, {n_r_rf}) excedem as antenas ({n_t}, {n_r})"
        )


def _split_users(rf: np.ndarray, bb: np.ndarray, k_users: int,
                 m: int) -> Tuple[List[np.ndarray], List[np.ndarray]]:
    """Separa o bloco BB de cada usuário e normaliza as colunas de q_k = rf bb_k."""
    q_list, bb_list = [], []
    for k in range(k_users):
        bb_k = bb[:, k * m:(k + 1) * m]
        norms = np.linalg.norm(rf @ bb_k, axis=0)
        if np.any(norms < COLLISION_TOL):
            raise DegenerateChannelError("coluna do precodificador nula após a síntese", k)
        bb_k = bb_k / norms
        bb_list.append(bb_k)
        q_list.append(rf @ bb_k)
    return q_list, bb_list


def pzf_hy(channels: Sequence[ChannelRealization], m: int, n_t_rf: int, n_r_rf: int,
           max_iters: int = 100, rel_tol: float = 1e-4,
           reference: Optional[BeamformerSet] = None) -> BeamformerSet:
    """Híbrido RF/BB aproximando o PZF-FD por descida por coordenadas em blocos."""
    k_users, n_t, n_r = _dims(channels)
    _check_rf_chains(n_t, n_r, k_users, m, n_t_rf, n_r_rf)
    if reference is None or reference.arch != Architecture.PZF_FD:
        reference = pzf_fd(channels, m)

    trace: List[float] = []
    stacked = np.hstack(reference.q)
    q_rf, q_bb = hybrid_factorize(stacked, n_t_rf, max_iters, rel_tol, trace=trace)
    logger.debug(
        f"PZF-HY TX: objetivo {trace[0]:.3e} -> {trace[-1]:.3e} em {len(trace) - 1} iterações"
    )
    q_list, bb_list = _split_users(q_rf, q_bb, k_users, m)

    d_list, d_rf_list, d_bb_list = [], [], []
    for d_target in reference.d:
        d_rf, d_bb = hybrid_factorize(d_target, n_r_rf, max_iters, rel_tol)
        d_list.append(d_rf @ d_bb)
        d_rf_list.append(d_rf)
        d_bb_list.append(d_bb)

    return BeamformerSet(arch=Architecture.PZF_HY, q=q_list, d=d_list, n_t_rf=n_t_rf,
                         n_r_rf=n_r_rf, q_rf=q_rf, q_bb=bb_list, d_rf=d_rf_list,
                         d_bb=d_bb_list)


def _select_paths(channel: ChannelRealization, m: int,
                  min_sep_rad: float) -> Tuple[List[int], bool]:
    """
    Escolhe M raios por ordem de potência respeitando a separação mínima de
    AoD e de AoA. Se a separação esgota os candidatos, admite os mais fortes
    restantes e sinaliza.
    """
    strengths = np.array([p.strength for p in channel.paths])
    order = np.argsort(-strengths, kind="stable")

    selected: List[int] = []
    for idx in order:
        if len(selected) == m:
            break
        path = channel.paths[idx]
        separated = all(
            abs(path.aod - channel.paths[s].aod) >= min_sep_rad
            and abs(path.aoa - channel.paths[s].aoa) >= min_sep_rad
            for s in selected
        )
        if separated:
            selected.append(int(idx))

    relaxed = False
    if len(selected) < m:
        relaxed = True
        for idx in order:
            if len(selected) == m:
                break
            if int(idx) not in selected:
                selected.append(int(idx))
    return selected, relaxed


def analog_an(channels: Sequence[ChannelRealization], m: int,
              min_sep_deg: float = 5.0) -> BeamformerSet:
    """Beamforming analógico: vetores de apontamento dos M raios dominantes."""
    k_users, n_t, n_r = _dims(channels)
    min_sep = np.deg2rad(min_sep_deg)

    q_list, d_list, flags = [], [], []
    for k, ch in enumerate(channels):
        if len(ch.paths) < m:
            raise DegenerateChannelError(f"{len(ch.paths)} raios para M={m} fluxos", k)
        selected, relaxed = _select_paths(ch, m, min_sep)
        if relaxed:
            logger.warning(f"AN: separação de {min_sep_deg}° relaxada para o usuário {k}")
            flags.append(f"an-separation-fallback:user{k}")
        q_list.append(np.column_stack([steering_vector(ch.paths[i].aod, n_t) for i in selected]))
        d_list.append(np.column_stack([steering_vector(ch.paths[i].aoa, n_r) for i in selected]))

    return BeamformerSet(arch=Architecture.AN, q=q_list, d=d_list, n_t_rf=k_users * m,
                         n_r_rf=m, flags=flags)


def _quantized_rf(target: np.ndarray, n_q: int) -> np.ndarray:
    n = target.shape[0]
    return np.exp(1j * quantize_phase(np.angle(target), n_q)) / np.sqrt(n)


def sw_phsh(channels: Sequence[ChannelRealization], m: int, n_q: int = 8,
            settings: Optional[SynthesisSettings] = None,
            reference: Optional[BeamformerSet] = None) -> BeamformerSet:
    """
    Chaves + defasadores fixos: fase de cada entrada RF quantizada na grade
    de N_Q ângulos; estágio BB por mínimos quadrados.
    """
    settings = settings or SynthesisSettings(n_q=n_q)
    k_users, n_t, n_r = _dims(channels)
    n_t_rf, n_r_rf = k_users * m, m
    _check_rf_chains(n_t, n_r, k_users, m, n_t_rf, n_r_rf)
    target = _target(channels, m, settings, reference)

    stacked = np.hstack(target.q)
    q_rf = _quantized_rf(stacked, n_q)
    q_bb = pseudo_inverse(q_rf) @ stacked
    q_list, bb_list = _split_users(q_rf, q_bb, k_users, m)

    d_list, d_rf_list, d_bb_list = [], [], []
    for d_target in target.d:
        d_rf = _quantized_rf(d_target, n_q)
        d_bb = pseudo_inverse(d_rf) @ d_target
        d_list.append(d_rf @ d_bb)
        d_rf_list.append(d_rf)
        d_bb_list.append(d_bb)

    return BeamformerSet(arch=Architecture.SW_PHSH, q=q_list, d=d_list, n_t_rf=n_t_rf,
                         n_r_rf=n_r_rf, q_rf=q_rf, q_bb=bb_list, d_rf=d_rf_list,
                         d_bb=d_bb_list)


def select_rows(target: np.ndarray, n_rf: int) -> np.ndarray:
    """
    Índices (crescentes) das n_rf linhas de maior norma euclidiana.
    Empates favorecem o menor índice de antena.
    """
    norms = np.linalg.norm(target, axis=1)
    order = np.argsort(-norms, kind="stable")
    return np.sort(order[:n_rf])


def selection_matrix(rows: np.ndarray, n: int) -> np.ndarray:
    """Matriz S (n x len(rows)) com um único 1 por coluna."""
    s = np.zeros((n, len(rows)))
    s[rows, np.arange(len(rows))] = 1.0
    return s


def sw_select(channels: Sequence[ChannelRealization], m: int,
              settings: Optional[SynthesisSettings] = None,
              reference: Optional[BeamformerSet] = None) -> BeamformerSet:
    """Seleção de antenas por chaves (regra de mínima norma de Frobenius)."""
    settings = settings or SynthesisSettings()
    k_users, n_t, n_r = _dims(channels)
    n_t_rf, n_r_rf = k_users * m, m
    _check_rf_chains(n_t, n_r, k_users, m, n_t_rf, n_r_rf)
    target = _target(channels, m, settings, reference)

    stacked = np.hstack(target.q)
    rows = select_rows(stacked, n_t_rf)
    s_t = selection_matrix(rows, n_t)
    q_list, bb_list = _split_users(s_t, stacked[rows, :], k_users, m)

    d_list, d_rf_list, d_bb_list = [], [], []
    for d_target in target.d:
        d_rows = select_rows(d_target, n_r_rf)
        s_r = selection_matrix(d_rows, n_r)
        d_bb = d_target[d_rows, :]
        d_list.append(s_r @ d_bb)
        d_rf_list.append(s_r)
        d_bb_list.append(d_bb)

    return BeamformerSet(arch=Architecture.SW, q=q_list, d=d_list, n_t_rf=n_t_rf,
                         n_r_rf=n_r_rf, q_rf=s_t, q_bb=bb_list, d_rf=d_rf_list,
                         d_bb=d_bb_list)


def synthesize(arch: Architecture, channels: Sequence[ChannelRealization], m: int,
               settings: Optional[SynthesisSettings] = None,
               reference: Optional[BeamformerSet] = None) -> BeamformerSet:
    """
    Sintetiza os beamformers de uma arquitetura.

    Args:
        arch: Arquitetura
        channels: Canais dos K usuários
        m: Fluxos por usuário
        settings: Parâmetros das sínteses restritas
        reference: PZF-FD (ou CM-FD) já calculado para o mesmo drop

    Returns:
        Conjunto de beamformers
    """
    settings = settings or SynthesisSettings()
    k_users = len(channels)

    if arch == Architecture.CM_FD:
        return cm_fd(channels, m)
    if arch == Architecture.PZF_FD:
        if reference is not None and reference.arch == Architecture.PZF_FD:
            return reference
        return pzf_fd(channels, m)
    if arch == Architecture.PZF_HY:
        return pzf_hy(channels, m, k_users * m, m, settings.bcd_max_iters,
                      settings.bcd_rel_tol, reference=reference)
    if arch == Architecture.AN:
        return analog_an(channels, m, settings.min_sep_deg)
    if arch == Architecture.SW_PHSH:
        return sw_phsh(channels, m, settings.n_q, settings=settings, reference=reference)
    if arch == Architecture.SW:
        return sw_select(channels, m, settings=settings, reference=reference)
    raise ConfigurationError(f"arquitetura desconhecida: {arch}")
