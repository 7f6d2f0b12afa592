# Tabelas e CSV de resultados
