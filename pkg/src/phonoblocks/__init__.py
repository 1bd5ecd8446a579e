"""Phoneme-block word construction engine."""

__version__ = "0.1.0"
