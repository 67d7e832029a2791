"""Exact Arakelov-style arithmetic for orders in semisimple Q-algebras."""

__version__ = "0.1.0"
