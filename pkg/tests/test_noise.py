"""
Tests for the golayft noise module
"""
from fractions import Fraction

import numpy as np
import pytest

from golayft.circuits.circuit import Kind
from golayft.noise.model import (GAMMA_MAX, NoiseModel, TransformedNoise, as_fraction, failure_spec,
                                 marginal_weight)


def test_sector_marginals_of_each_location_kind():
    assert marginal_weight(Kind.CNOT, "X") == (12, ("IX", "XI", "XX"))
    assert marginal_weight(Kind.CNOT, "Z") == (12, ("IZ", "ZI", "ZZ"))
    assert marginal_weight(Kind.REST, "X") == (8, ("X",))
    assert marginal_weight(Kind.PREP_ZERO, "X") == (4, ("X",))
    assert marginal_weight(Kind.PREP_ZERO, "Z") == (0, ())
    assert marginal_weight(Kind.MEAS_X, "Z") == (4, ("Z",))
    with pytest.raises(ValueError):
        marginal_weight(Kind.CNOT, "Y")


def test_full_failure_totals():
    assert failure_spec(Kind.CNOT).total == 15
    assert failure_spec(Kind.REST).total == 12
    assert failure_spec(Kind.MEAS_Z).total == 4
    with pytest.raises(ValueError):
        failure_spec(9)


def test_noise_model_from_p_is_exact():
    noise = NoiseModel.from_p(1e-3)
    assert noise.gamma == Fraction(1, 15000)
    assert noise.p == Fraction(1, 1000)
    assert noise.failure_probability(Kind.CNOT) == Fraction(1, 1000)
    assert noise.in_bound_range()
    assert not NoiseModel(GAMMA_MAX * 2).in_bound_range()
    assert as_fraction(0.1) == Fraction(1, 10)


def test_rest_noise_can_be_switched_off():
    noise = NoiseModel(Fraction(1, 100), rest_scale=0)
    assert noise.failure_probability(Kind.REST) == 0
    assert noise.sample_location_fault(Kind.REST, np.random.default_rng(0)) is None


def test_noise_model_validation():
    with pytest.raises(ValueError, match="outside"):
        NoiseModel(Fraction(1, 10))
    with pytest.raises(ValueError, match="outside"):
        NoiseModel(-1)
    with pytest.raises(ValueError, match="rest_scale"):
        NoiseModel(Fraction(1, 100), rest_scale=2)


def test_sampled_faults_follow_the_choice_distribution():
    noise = NoiseModel(Fraction(1, 15))
    rng = np.random.default_rng(1)
    # at p = 1 a CNOT always fails, uniformly over the 15 nontrivial Paulis
    labels = [noise.sample_location_fault(Kind.CNOT, rng).label() for _ in range(3000)]
    assert "II" not in labels
    assert len(set(labels)) == 15
    counts = np.unique(labels, return_counts=True)[1]
    assert counts.min() > 100


def test_transformed_noise_location_weights():
    alpha = {e: i + 1 for i, e in enumerate(("XI", "IX", "XX", "ZI", "IZ", "ZZ", "rest_X", "rest_Z",
                                             "prep_X", "prep_Z", "meas_X", "meas_Z"))}
    tn = TransformedNoise(Gamma=None, alpha=alpha)
    w = tn.location_weights("X")
    assert w[(Kind.CNOT, "XX")] == 3
    assert w[Kind.REST] == alpha["rest_X"]
    assert w[Kind.MEAS_Z] == alpha["meas_X"]
    assert tn.location_weights("Z")[Kind.PREP_PLUS] == alpha["prep_Z"]
    with pytest.raises(ValueError, match="no weight"):
        tn.weight("YY")
