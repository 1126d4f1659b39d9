"""Decide and certify perfect tensor formats."""

__version__ = "0.1.0"
