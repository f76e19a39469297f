"""Operational game semantics and the internal π-calculus, side by side."""

__version__ = "0.1.0"
