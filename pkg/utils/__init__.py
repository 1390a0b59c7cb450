# Módulo de utilitários
