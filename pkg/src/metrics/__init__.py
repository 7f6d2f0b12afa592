# Métricas de desempenho
