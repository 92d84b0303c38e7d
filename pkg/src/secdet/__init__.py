"""Determinantal presentations of higher secant varieties of minimal degree."""

__version__ = "0.1.0"
