# Álgebra linear complexa
