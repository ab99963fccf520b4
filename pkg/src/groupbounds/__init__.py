"""Multiplicative bounds for finite subgroups of reductive groups, in exact arithmetic."""

__version__ = "0.1.0"
