"""Nonlocal fourth-order viscous water-wave model: equations, time stepping, I/O."""

__version__ = "0.1.0"
