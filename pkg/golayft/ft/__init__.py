"""
Copyright © 2026 The golayft developers.
"""
from .correlated import CorrelatedErrorTable, correlated_errors
from .strict import FtReport, Witness, strict_ft_check
from .search import STRATEGIES, random_search, resolve_overlap_convention
