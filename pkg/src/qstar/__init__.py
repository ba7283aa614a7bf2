"""Coefficient-bound laboratory for the starlike classes associated with
``xi_q(z) = 1 + sin(qz) / (q (1 - qz))`` and its classical limit
``xi(z) = 1 + sin z / (1 - z)``."""

__version__ = "0.1.0"
