"""Exact computations for polytopes, intersections of quadrics and moment-angle manifolds."""

__version__ = "0.1.0"
