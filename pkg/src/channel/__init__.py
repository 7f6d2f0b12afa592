# Modelo de canal clusterizado
