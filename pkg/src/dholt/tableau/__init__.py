"""Tableau proof search, refutation traces and trace validation."""
from dholt.tableau.engine import MODES, SearchConfig, Verdict, search

__all__ = ["MODES", "SearchConfig", "Verdict", "search"]
