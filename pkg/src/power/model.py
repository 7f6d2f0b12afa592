"""
Modelo de consumo de potência dos circuitos do transmissor (BS) e do
receptor (terminal) para cada arquitetura de beamforming.
As constantes são dadas em mW; as funções devolvem watts.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict

from ..beamforming.architectures import Architecture
from ..core.errors import ConfigurationError

logger = logging.getLogger(__name__)

MW = 1e-3


@dataclass(frozen=True)
class PowerConstants:
    """Consumo por componente (mW) e ineficiência do amplificador η."""
    p_rfc: float = 40.0        # cadeia RF
    p_dac: float = 110.0       # DAC
    p_adc: float = 200.0       # ADC
    p_pa: float = 16.0         # amplificador de potência
    p_lna: float = 30.0        # LNA
    p_bb: float = 243.0        # pré/pós-codificador em banda base (CMOS)
    p_ps: float = 30.0         # defasador ajustável
    p_element: float = 27.0    # elemento do phased array
    p_sw: float = 5.0          # chave
    p_ps_fixed: float = 1.0    # defasador fixo
    eta: float = 2.0           # adimensional

    def __post_init__(self):
        """Validação das constantes."""
        for name, value in asdict(self).items():
            if value <= 0:
                raise ConfigurationError(f"constante de potência {name} deve ser positiva, recebido {value}")
        if self.eta <= 1:
            raise ConfigurationError(f"η deve ser > 1, recebido {self.eta}")

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def tx_breakdown(arch: Architecture, n_t: int, n_t_rf: int, n_q: int,
                 c: PowerConstants) -> Dict[str, float]:
    """Contribuições (mW) de cada bloco do transmissor."""
    if arch in (Architecture.CM_FD, Architecture.PZF_FD):
        return {
            "rf_chains": n_t * c.p_rfc,
            "converters": n_t * c.p_dac,
            "amplifiers": n_t * c.p_pa,
            "baseband": c.p_bb,
        }
    if arch == Architecture.PZF_HY:
        return {
            "rf_chains": n_t_rf * c.p_rfc,
            "converters": n_t_rf * c.p_dac,
            "phase_shifters": n_t_rf * n_t * c.p_ps,
            "amplifiers": n_t * c.p_pa,
            "baseband": c.p_bb,
        }
    if arch == Architecture.AN:
        return {
            "rf_chains": n_t_rf * c.p_rfc,
            "array_elements": n_t_rf * n_t * c.p_element,
            "converters": n_t_rf * c.p_dac,
        }
    if arch == Architecture.SW_PHSH:
        return {
            "rf_chains": n_t_rf * c.p_rfc,
            "converters": n_t_rf * c.p_dac,
            "phase_shifters": n_t_rf * n_q * c.p_ps_fixed,
            "switches": n_t * n_t_rf * c.p_sw,
            "amplifiers": n_t * c.p_pa,
            "baseband": c.p_bb,
        }
    if arch == Architecture.SW:
        return {
            "rf_chains": n_t_rf * c.p_rfc,
            "converters": n_t_rf * c.p_dac,
            "switches": n_t_rf * c.p_sw,
            "amplifiers": n_t_rf * c.p_pa,
            "baseband": c.p_bb,
        }
    raise ConfigurationError(f"arquitetura desconhecida: {arch}")


def rx_breakdown(arch: Architecture, n_r: int, n_r_rf: int, n_q: int,
                 c: PowerConstants) -> Dict[str, float]:
    """Contribuições (mW) de cada bloco do receptor."""
    if arch in (Architecture.CM_FD, Architecture.PZF_FD):
        return {
            "rf_chains": n_r * c.p_rfc,
            "converters": n_r * c.p_adc,
            "amplifiers": n_r * c.p_lna,
            "baseband": c.p_bb,
        }
    if arch == Architecture.PZF_HY:
        # N_R LNAs: um por antena receptora
        return {
            "rf_chains": n_r_rf * c.p_rfc,
            "converters": n_r_rf * c.p_adc,
            "phase_shifters": n_r_rf * n_r * c.p_ps,
            "amplifiers": n_r * c.p_lna,
            "baseband": c.p_bb,
        }
    if arch == Architecture.AN:
        return {
            "rf_chains": n_r_rf * c.p_rfc,
            "array_elements": n_r_rf * n_r * c.p_element,
            "converters": n_r_rf * c.p_adc,
        }
    if arch == Architecture.SW_PHSH:
        return {
            "rf_chains": n_r_rf * c.p_rfc,
            "converters": n_r_rf * c.p_adc,
            "phase_shifters": n_r_rf * n_q * c.p_ps_fixed,
            "switches": n_r * n_r_rf * c.p_sw,
            "amplifiers": n_r * c.p_lna,
            "baseband": c.p_bb,
        }
    if arch == Architecture.SW:
        return {
            "rf_chains": n_r_rf * c.p_rfc,
            "converters": n_r_rf * c.p_adc,
            "switches": n_r_rf * c.p_sw,
            "amplifiers": n_r_rf * c.p_lna,
            "baseband": c.p_bb,
        }
    raise ConfigurationError(f"arquitetura desconhecida: {arch}")


def tx_circuit_power(arch: Architecture, n_t: int, n_t_rf: int, n_q: int,
                     c: PowerConstants) -> float:
    """Potência dos circuitos da BS em watts."""
    return sum(tx_breakdown(arch, n_t, n_t_rf, n_q, c).values()) * MW


def rx_circuit_power(arch: Architecture, n_r: int, n_r_rf: int, n_q: int,
                     c: PowerConstants) -> float:
    """Potência dos circuitos de um terminal em watts."""
    return sum(rx_breakdown(arch, n_r, n_r_rf, n_q, c).values()) * MW


def rf_chain_counts(arch: Architecture, n_t: int, n_r: int, k_users: int,
                    m: int) -> Dict[str, int]:
    """Cadeias RF usadas na contabilidade de potência."""
    if arch.fully_digital:
        return {"n_t_rf": n_t, "n_r_rf": n_r}
    return {"n_t_rf": k_users * m, "n_r_rf": m}


def power_breakdown(arch: Architecture, n_t: int, n_r: int, n_t_rf: int, n_r_rf: int,
                    n_q: int, c: PowerConstants) -> Dict[str, Dict[str, float]]:
    """
    Detalhamento por bloco, em watts, do transmissor e do receptor.

    Returns:
        {'tx': {...}, 'rx': {...}} com a chave 'total' em cada lado
    """
    result = {}
    for side, parts in (("tx", tx_breakdown(arch, n_t, n_t_rf, n_q, c)),
                        ("rx", rx_breakdown(arch, n_r, n_r_rf, n_q, c))):
        in_watts = {name: value * MW for name, value in parts.items()}
        in_watts["total"] = sum(parts.values()) * MW
        result[side] = in_watts
    return result
