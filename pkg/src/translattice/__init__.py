"""Transcendental lattices of double planes via the Zariski-van Kampen method."""
__version__ = "0.1.0"
