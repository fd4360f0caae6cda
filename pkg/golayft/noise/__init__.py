"""
Copyright © 2026 The golayft developers.
"""
from .model import (GAMMA_MAX, LocationFailureSpec, NoiseModel, TransformedNoise, as_fraction, failure_spec,
                    marginal_weight)
