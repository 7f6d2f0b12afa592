#!/usr/bin/env python3
"""
MMBeamSim - Simulador Monte Carlo de beamforming MU-MIMO mmWave
Ponto de entrada principal para execução via linha de comando.
"""

import sys
from pathlib import Path

# Adiciona a raiz do projeto ao path para importações
sys.path.insert(0, str(Path(__file__).parent))

from src.cli.main import entry_point

if __name__ == '__main__':
    entry_point()
