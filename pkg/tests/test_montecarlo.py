"""
Tests for the golayft montecarlo module
"""
from fractions import Fraction

import numpy as np
import pytest

from golayft.circuits import network as nw
from golayft.circuits import prep
from golayft.code.tables import class_tables
from golayft.montecarlo import (FaultSampler, key_basis, overhead_curve, simulate_malignant,
                                simulate_overhead)
from golayft.noise.model import NoiseModel


@pytest.fixture()
def pair(steane_prep):
    return nw.two_ancilla_network(steane_prep, steane_prep)


def test_key_basis_spans_every_key_bit(golay, steane):
    for code in (golay, steane):
        ct = class_tables(code)
        basis = key_basis(code)
        assert len(basis) == code.r + 1
        for j, mask in enumerate(basis):
            assert ct.key(int(mask)) == 1 << j


def test_noiseless_trials_are_accepted_and_clean(steane, pair):
    t = FaultSampler(pair, steane, NoiseModel(0)).sample(50, seed=3)
    assert t.n == 50
    assert t.accepted().all()
    assert not t.x.any() and not t.z.any()


def test_sampling_is_reproducible_per_stream(steane, pair):
    sampler = FaultSampler(pair, steane, NoiseModel.from_p(0.05))
    a = sampler.sample(400, seed=11, stream=2)
    b = sampler.sample(400, seed=11, stream=2)
    c = sampler.sample(400, seed=11, stream=3)
    assert np.array_equal(a.x, b.x) and np.array_equal(a.z, b.z)
    assert not np.array_equal(a.x, c.x)
    assert not a.accepted().all()
    with pytest.raises(ValueError):
        sampler.sample(0)


def test_noiseless_overhead_is_the_bare_cost(steane, pair):
    est = simulate_overhead(pair, steane, NoiseModel(0), 100, seed=0, batches=4, progress=False)
    assert est.pr_accept == 1
    assert est.expected_cnots == est.min_cnots == pair.cnot_count == 25
    # two preparations of 8n qubits and one test of 4n
    assert est.expected_qubits == 2 * 8 * 7 + 4 * 7
    assert not est.flagged


def test_overhead_depends_only_on_seed_and_batches(steane, pair):
    noise = NoiseModel.from_p(1e-2)
    one = simulate_overhead(pair, steane, noise, 2000, seed=5, batches=4, workers=1, progress=False)
    two = simulate_overhead(pair, steane, noise, 2000, seed=5, batches=4, workers=2, progress=False)
    assert one.to_dict() == two.to_dict()
    assert 0 < one.pr_accept < 1
    assert one.expected_cnots > one.min_cnots
    assert one.pr_accept_stderr > 0


def test_overhead_curve_rows(steane, pair):
    rows, estimates = overhead_curve(pair, steane, [0, 1e-3], 200, batches=2, name="pair", progress=False)
    assert [r[:2] for r in rows] == [[0.0, "pair"], [1e-3, "pair"]]
    assert estimates[0].pr_accept == 1
    with pytest.raises(ValueError):
        simulate_overhead(pair, steane, NoiseModel(0), 0, progress=False)


def test_no_malignant_events_without_noise(steane, pair):
    est = simulate_malignant(steane, None, None, NoiseModel(0), 60, seed=1, batches=3, progress=False)
    assert est.accepted == 60
    assert set(est.counts) == {"IX", "XI", "XX", "IZ", "ZI", "ZZ"}
    assert all(v == 0 for v in est.counts.values())
    est = simulate_malignant(steane, pair, pair.dual(), NoiseModel(0), 20, variant="A-", batches=2,
                             progress=False)
    assert est.accepted == 20 and est.frequency("XX") == 0


def test_malignant_events_appear_under_heavy_noise(steane):
    est = simulate_malignant(steane, None, None, NoiseModel(Fraction(1, 150)), 3000, seed=4, batches=3,
                             progress=False)
    assert est.accepted == 3000
    assert sum(est.counts.values()) > 0
    assert 0 <= est.frequency("IX") <= 1
    with pytest.raises(ValueError, match="unknown event"):
        est.frequency("YY")


def test_malignant_rejects_unknown_variant(steane):
    with pytest.raises(ValueError, match="variant"):
        simulate_malignant(steane, None, None, NoiseModel(0), 10, variant="AA", progress=False)
    with pytest.raises(ValueError):
        simulate_malignant(steane, None, None, NoiseModel(0), 0, progress=False)


@pytest.mark.slow
def test_steane4_overhead_at_p_one_in_a_thousand(golay):
    net = nw.four_ancilla_network(prep.steane4_preps(), name="steane4")
    est = simulate_overhead(net, golay, NoiseModel.from_p(1e-3), 100000, seed=1, batches=10, progress=False)
    assert est.min_cnots == 4 * 77 + 69
    assert est.pr_accept == pytest.approx(0.648, abs=0.015)
    assert est.expected_cnots == pytest.approx(497.6, rel=0.03)
    assert not est.flagged
