"""Tableau prover for dependently-typed higher-order logic."""
__version__ = "0.1.0"
