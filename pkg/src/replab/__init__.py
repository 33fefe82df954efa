"""Exact representation-theory engine for symplectic and special linear groups."""

__version__ = "0.1.0"
