"""Exact classification of orbits of linear nilpotent Lie group actions."""

__version__ = "0.1.0"
