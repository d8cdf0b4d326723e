"""Rank-two twists of elliptic curves with full rational 2-torsion."""

__version__ = "0.1.0"
