"""Exact finite-dimensional representations of Yangians and twisted Yangians."""

__version__ = "0.1.0"
