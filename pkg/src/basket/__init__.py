"""Exact basket arithmetic and Reid's orbifold Riemann-Roch contributions"""
