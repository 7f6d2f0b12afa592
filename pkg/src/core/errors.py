"""
Exceções do MMBeamSim.
Falhas de síntese e de métrica viram linhas sinalizadas no pipeline;
erros de configuração abortam antes de qualquer cálculo.
"""

from typing import Optional, Tuple


class SimulationError(RuntimeError):
    """Erro base da simulação."""

    kind = "simulation"


class NumericalError(SimulationError):
    """Falha numérica (SVD sem convergência, entrada não finita)."""

    kind = "numerical"

    def __init__(self, message: str, shape: Optional[Tuple[int, ...]] = None):
        if shape is not None:
            message = f"{message} (dimensões {shape[0]}x{shape[1] if len(shape) > 1 else 1})"
        super().__init__(message)
        self.shape = shape


class _UserError(SimulationError):
    """Erro associado a um usuário específico."""

    def __init__(self, message: str, user: int):
        super().__init__(f"usuário {user}: {message}")
        self.user = user


class DegenerateChannelError(_UserError):
    """Canal com posto menor que o número de fluxos pedido."""

    kind = "degenerate-channel"


class RankCollisionError(_UserError):
    """Projeção PZF anulou uma coluna do precodificador."""

    kind = "rank-collision"


class SingularDisturbanceError(_UserError):
    """Combinador sem posto coluna completo."""

    kind = "singular-disturbance"


class ConfigurationError(SimulationError, ValueError):
    """Configuração inválida."""

    kind = "configuration"
