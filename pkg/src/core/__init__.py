# Módulo principal do pipeline 