"""Exact toolkit for degree-d holomorphic foliations of the projective plane."""

__version__ = "0.1.0"
