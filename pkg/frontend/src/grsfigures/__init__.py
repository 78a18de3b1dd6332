"""Batch figure rendering for the covering-experiment CSV schemas."""

__version__ = "0.1.0"
