"""
Copyright © 2026 The golayft developers.
"""
from .envelope import Envelope, EventBounds, Grid, dominates, enclose, envelope
from .pseudo import PseudoThreshold, pseudo_threshold
from .level2 import level2_checks, level2_count, scaling_check, structure_check
from .bound import (ThresholdResult, build_transformed, compose_bounds, iterate_levels, level1_replay,
                    threshold_lower_bound)
