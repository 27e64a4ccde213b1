"""Exact Dehn-twist calculus and geography certificates for genus-2 Lefschetz fibrations."""

__version__ = "0.1.0"
