"""Orthogonal floor plans with a guaranteed L- or T-shaped module."""

__version__ = "0.1.0"
