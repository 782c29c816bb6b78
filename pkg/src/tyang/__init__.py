"""Exact computations with super Yangian and reflection-algebra module actions."""

__version__ = "0.1.0"
