"""Continuous (4,5) embedded Runge-Kutta pairs: construction, analysis, integration."""

__version__ = "0.1.0"
