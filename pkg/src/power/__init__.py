# Modelo de consumo de circuito
