"""Covering algorithms, coverage bounds, and experiments for GRS codes."""

__version__ = "0.1.0"
