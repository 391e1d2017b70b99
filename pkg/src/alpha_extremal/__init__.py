"""Spectral extremal search for tricyclic graphs under the A_alpha matrix."""

__version__ = "0.1.0"
