"""Exact second cohomology of Lie superalgebras and cyclic homology of Jordan superalgebras."""

__version__ = "0.1.0"
