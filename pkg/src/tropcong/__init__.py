"""Exact decision procedures for congruences of additively idempotent semirings."""

__version__ = "0.1.0"
