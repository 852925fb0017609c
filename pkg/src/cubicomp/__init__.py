"""Composition laws on cubic curves and surfaces over finite fields."""

__version__ = "0.1.0"
