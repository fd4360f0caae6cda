"""
Copyright © 2026 The golayft developers.
"""
from .sampling import FaultSampler, Trials, corrected_keys, key_basis, stream_seed
from .overhead import OverheadEstimate, overhead_curve, simulate_overhead
from .malignant import MalignantEstimate, MalignantSampler, simulate_malignant
