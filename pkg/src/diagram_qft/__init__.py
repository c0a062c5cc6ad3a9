"""Diagram algebras, their Fourier transforms, and a matrix-level simulation of a
separation-of-variables quantum Fourier transform."""

__version__ = "0.1.0"
