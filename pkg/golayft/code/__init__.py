"""
Copyright © 2026 The golayft developers.
"""
from .pauli import PauliVec, popcount, parity, rref, rank, same_rowspace
from .css import (CssCode, ErrorClassKey, classify, code_from_rows, golay_code, is_uncorrectable,
                  keeps_logical, load_code, random_presentation, reduced_weight, steane_code, syndrome)
from .tables import ClassTables, class_tables
from .symmetry import QubitPermutation, m23_generators, preserves_rowspace, random_m23
