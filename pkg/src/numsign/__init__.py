"""Numeric hand-sign recognition from single frames via a 2-d skeletal model."""

__version__ = "0.1.0"
