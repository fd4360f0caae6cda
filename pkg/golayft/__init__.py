"""
Copyright © 2026 The golayft developers.
"""
from .version import version
from .default_ops import default_ops
from .run_golay import run_golay, run_code, run_prep, run_ft, run_overhead, run_count, run_threshold
from .code import golay_code, steane_code, load_code
from .counting import KGoodConfig, count_level
from .montecarlo import simulate_overhead, simulate_malignant
from .threshold import pseudo_threshold, threshold_lower_bound

name = "golayft"
