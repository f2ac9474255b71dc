"""Simulation of nested-ball games and their lattice-flow reformulation."""

__version__ = "0.1.0"
