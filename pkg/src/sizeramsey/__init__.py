"""Desk-scale constructions and certificates around size-Ramsey numbers of
powers of tight paths and bounded-degree graphs built from long paths."""

__version__ = "0.1.0"
