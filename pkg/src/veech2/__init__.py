"""Exact toolkit for genus two translation surfaces over real quadratic fields."""

__version__ = "0.1.0"
