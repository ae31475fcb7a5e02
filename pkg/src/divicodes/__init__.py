"""Projective 2^r-divisible binary codes: constructions, classification, bounds."""

__version__ = "0.1.0"
