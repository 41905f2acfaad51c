"""Exact Hopf-algebra computations over Q(xi), xi a primitive sixth root of unity."""

__version__ = "0.1.0"
