"""Certificates for strict expansiveness of integer matrices."""

__version__ = "0.1.0"
