"""
Copyright © 2026 The golayft developers.
"""
from .countpoly import CountPoly, convolve, poly_sum
from .expr import (BoundExpr, Compose, Const, Inconclusive, Leaf, Min1, Product, Ratio, Scale, Sum, const,
                   eval_exact, from_dict, leaf, min_degree)
from .jet import Interval, Jet
from .monotone import MonotonicityCertificate, certify_monotone
