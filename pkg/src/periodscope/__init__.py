"""Exact Picard-Fuchs operators, local monodromy and Hodge bookkeeping for
one-parameter Calabi-Yau and superelliptic families."""

__version__ = "0.1.0"
