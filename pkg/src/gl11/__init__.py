"""Exact gl(1|1)-Alexander invariants of links and 3-manifolds."""

__version__ = "0.1.0"
