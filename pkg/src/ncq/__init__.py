"""Pseudo-differential tau-quantization on finite groups and nilpotent Lie groups."""

__version__ = "0.1.0"
