# MMBeamSim - Simulador Monte Carlo de beamforming MU-MIMO mmWave
__version__ = "0.1.0"
__author__ = "MMBeamSim Team"
__description__ = "Simulador de eficiência espectral e energética de estruturas de beamforming mmWave"
