"""Synchronizing words of deterministic finite automata."""

__version__ = "1.0.0"
