# Sínteses de beamforming
