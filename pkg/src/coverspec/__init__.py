"""Exact tools for specializing Galois covers of the projective line and for
obstructions to parametric extensions."""

__version__ = "0.1.0"
