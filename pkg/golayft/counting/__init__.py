"""
Copyright © 2026 The golayft developers.
"""
from .config import KGoodConfig
from .bad import bad_bound, bad_expr
from .tables import OrderTable, StageTable, grouped_convolve, series_dot, spread_convolve, xor_convolve
from .prep import ErrorCounts, JointCounts, count_network, count_prep, count_stage, joint_counts, split_verification
from .verify import ComponentResult, TreeResult, verify, verify_network, verify_x, verify_z
from .ec import ECCounts, ec_component, ec_stages, lec_syndrome_classes
from .exrec import EVENTS, RectangleBounds, cnot_stages, exrec_count, exrec_variants, gate_exrecs
from .pipeline import LevelCounts, count_level, verification_network
