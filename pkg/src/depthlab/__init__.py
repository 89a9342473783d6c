"""Exact depth, Tor/Ext and derived-tensor computations over graded rings."""

__version__ = "0.1.0"
