"""Executable workbench for N-reductions between third-order problems."""

__version__ = "0.1.0"
